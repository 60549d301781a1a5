//! `encode`, `decode` and `corrupt` on in-memory buffers.

use std::collections::HashSet;

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rayon::prelude::*;
use rayon::ThreadPool;
use rsxf_core::{CodeParams, RsCodec};

use crate::container::{pack_payload, unpack_payload, Container, ContainerHeader};
use crate::CliError;

/// Encodes `payload` into a complete container.
pub fn encode_bytes(payload: &[u8], params: CodeParams, pool: &ThreadPool) -> Result<Vec<u8>, CliError> {
    let header = ContainerHeader::new(params, payload.len() as u64)?;
    let chunks = header.chunks()? as usize;
    let k = params.k();
    let symbols = pack_payload(payload, params.m(), chunks * k);
    let codec = RsCodec::new(params)?;
    let words = pool.install(|| {
        symbols
            .par_chunks(k)
            .map(|msg| codec.encode(msg).map(|c| c.into_symbols()))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(Container { header, chunks: words }.to_bytes())
}

/// Per-chunk decode outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChunkStatus {
    Corrected(usize),
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct DecodeReport {
    pub chunks: Vec<ChunkStatus>,
    /// The recovered payload, present only when every chunk decoded.
    pub payload: Option<Vec<u8>>,
}

impl DecodeReport {
    pub fn failures(&self) -> usize {
        self.chunks.iter().filter(|c| matches!(c, ChunkStatus::Failed(_))).count()
    }

    pub fn corrected(&self) -> usize {
        self.chunks
            .iter()
            .map(|c| match c {
                ChunkStatus::Corrected(e) => *e,
                ChunkStatus::Failed(_) => 0,
            })
            .sum()
    }
}

/// Decodes every chunk of a container. Container errors are returned as
/// `Err`; undecodable chunks are reported in the [`DecodeReport`].
pub fn decode_bytes(bytes: &[u8], pool: &ThreadPool) -> Result<DecodeReport, CliError> {
    let c = Container::parse(bytes)?;
    let params = c.header.params;
    let codec = RsCodec::new(params)?;
    let results: Vec<_> = pool.install(|| c.chunks.par_iter().map(|w| codec.decode(w)).collect());

    let mut statuses = Vec::with_capacity(results.len());
    let mut message = Vec::with_capacity(results.len() * params.k());
    for r in results {
        match r {
            Ok(d) => {
                statuses.push(ChunkStatus::Corrected(d.error_count()));
                message.extend_from_slice(d.corrected.message());
            }
            Err(e) => statuses.push(ChunkStatus::Failed(e.to_string())),
        }
    }
    let ok = statuses.iter().all(|s| matches!(s, ChunkStatus::Corrected(_)));
    let payload = ok.then(|| unpack_payload(&message, params.m(), c.header.payload_len as usize));
    Ok(DecodeReport { chunks: statuses, payload })
}

/// Flips `errors` distinct symbols in every chunk.
///
/// The generator is xoshiro256** seeded through SplitMix64
/// (`seed_from_u64`). Chunks are processed in order; for each one, positions
/// are drawn as `next_u64() % n`, skipping repeats, and then each chosen
/// symbol, in draw order, is XOR-ed with `1 + next_u64() % (2^m - 1)`.
pub fn corrupt_bytes(bytes: &[u8], errors: usize, seed: u64) -> Result<Vec<u8>, CliError> {
    let mut c = Container::parse(bytes)?;
    let n = c.header.params.n();
    if errors > n {
        return Err(CliError::TooManyErrors { errors, n });
    }
    let nonzero = (1u64 << c.header.m()) - 1;
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    for chunk in &mut c.chunks {
        let mut seen = HashSet::with_capacity(errors);
        let mut positions = Vec::with_capacity(errors);
        while positions.len() < errors {
            let p = (rng.next_u64() % n as u64) as usize;
            if seen.insert(p) {
                positions.push(p);
            }
        }
        for p in positions {
            chunk[p] ^= (1 + rng.next_u64() % nonzero) as u16;
        }
    }
    Ok(c.to_bytes())
}
