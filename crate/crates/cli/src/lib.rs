//! File container and command implementations behind the `rsxf` binary.

pub mod bench;
pub mod commands;
pub mod container;
pub mod selftest;

use thiserror::Error;

pub use commands::{corrupt_bytes, decode_bytes, encode_bytes, ChunkStatus, DecodeReport};
pub use container::{Container, ContainerError, ContainerHeader};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed container: {0}")]
    Container(#[from] ContainerError),
    #[error(transparent)]
    Codec(#[from] rsxf_core::Error),
    #[error("cannot place {errors} errors in a chunk of {n} symbols")]
    TooManyErrors { errors: usize, n: usize },
    #[error("invalid RSXF_THREADS value {0:?}")]
    Threads(String),
    #[error("benchmark: {0}")]
    Bench(String),
    #[error(transparent)]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Worker pool capped by `threads`, or rayon's default when `None`/0.
pub fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build()?)
}

/// Reads `RSXF_THREADS`; unset or empty means no cap.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("RSXF_THREADS") {
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => s.trim().parse().map(Some).map_err(|_| CliError::Threads(s)),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(std::env::VarError::NotUnicode(s)) => Err(CliError::Threads(s.to_string_lossy().into())),
    }
}
