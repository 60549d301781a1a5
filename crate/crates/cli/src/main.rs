use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use rsxf_cli::bench::run_bench;
use rsxf_cli::selftest::run_selftest;
use rsxf_cli::{corrupt_bytes, decode_bytes, encode_bytes, thread_pool, threads_from_env, ChunkStatus};
use rsxf_core::CodeParams;

/// Reed-Solomon file protection over GF(2^m) with additive-FFT codecs.
#[derive(Parser)]
#[command(name = "rsxf", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Encode a file into an RSXF container.
    Encode {
        input: PathBuf,
        output: PathBuf,
        /// Field dimension; codewords have n = 2^m symbols.
        #[arg(long, default_value_t = 16)]
        m: u32,
        /// Parity length is 2^t symbols.
        #[arg(long, default_value_t = 15)]
        t: u32,
    },
    /// Decode a container, correcting errors, and write the payload.
    Decode { input: PathBuf, output: PathBuf },
    /// Inject random symbol errors into every chunk of a container.
    Corrupt {
        input: PathBuf,
        output: PathBuf,
        /// Errors per chunk.
        #[arg(long)]
        errors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time encoding and decoding.
    Bench {
        #[arg(long, default_value_t = 16)]
        m: u32,
        #[arg(long, default_value_t = 15)]
        t: u32,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Skip the m = 10..16 scaling table and baseline comparison.
        #[arg(long)]
        no_scaling: bool,
    },
    /// Check the algorithms against slow reference implementations.
    Selftest,
}

fn read(path: &PathBuf) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &PathBuf, data: &[u8]) -> Result<()> {
    fs::write(path, data).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let pool = thread_pool(threads_from_env()?)?;
    match cli.cmd {
        Cmd::Encode { input, output, m, t } => {
            let params = CodeParams::new(m, t)?;
            let data = read(&input)?;
            let out = encode_bytes(&data, params, &pool)?;
            write(&output, &out)?;
            eprintln!("encoded {} bytes into {} bytes", data.len(), out.len());
        }
        Cmd::Decode { input, output } => {
            let report = decode_bytes(&read(&input)?, &pool)?;
            for (i, c) in report.chunks.iter().enumerate() {
                match c {
                    ChunkStatus::Corrected(e) => println!("chunk {i}: {e} errors corrected"),
                    ChunkStatus::Failed(why) => println!("chunk {i}: FAILED: {why}"),
                }
            }
            let Some(payload) = report.payload else {
                eprintln!("{} of {} chunks failed to decode; no output written", report.failures(), report.chunks.len());
                return Ok(ExitCode::FAILURE);
            };
            write(&output, &payload)?;
        }
        Cmd::Corrupt { input, output, errors, seed } => {
            write(&output, &corrupt_bytes(&read(&input)?, errors, seed)?)?;
        }
        Cmd::Bench { m, t, trials, no_scaling } => {
            let report = pool.install(|| run_bench(CodeParams::new(m, t)?, trials, !no_scaling))?;
            print!("{report}");
        }
        Cmd::Selftest => {
            let checks = run_selftest();
            for c in &checks {
                match &c.outcome {
                    Ok(detail) => println!("ok      {}: {detail}", c.name),
                    Err(why) => println!("FAILED  {}: {why}", c.name),
                }
            }
            if !checks.iter().all(|c| c.passed()) {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
