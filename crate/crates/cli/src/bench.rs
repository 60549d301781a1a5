//! Timing and operation-count report for the `bench` command.

use std::fmt;
use std::time::{Duration, Instant};

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rsxf_core::oracle::classic_decode;
use rsxf_core::{CodeParams, FieldElem, OpTally, RsCodec};

use crate::CliError;

#[derive(Clone, Debug)]
pub struct ScalingRow {
    pub m: u32,
    pub n: usize,
    pub decode: Duration,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub params: CodeParams,
    pub trials: usize,
    pub encode: Duration,
    pub decode: Duration,
    pub encode_ops: OpTally,
    pub scaling: Vec<ScalingRow>,
    /// `(power-sum decoder, this decoder)` at m = 12, rate 1/2.
    pub baseline: Option<(Duration, Duration)>,
}

impl BenchReport {
    /// Least-squares slope of log(time) against log(n lg^2 n).
    pub fn scaling_exponent(&self) -> Option<f64> {
        if self.scaling.len() < 2 {
            return None;
        }
        let pts: Vec<(f64, f64)> = self
            .scaling
            .iter()
            .map(|r| {
                let n = r.n as f64;
                ((n * n.log2().powi(2)).ln(), r.decode.as_secs_f64().ln())
            })
            .collect();
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
        Some(sxy / sxx)
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params;
        let msg_bytes = (p.k() * p.m() as usize) as f64 / 8.0;
        let mbps = |d: Duration| msg_bytes / d.as_secs_f64() / 1e6;
        writeln!(f, "code (n, k) = ({}, {}), T = {}, {} trials (median)", p.n(), p.k(), p.parity_len(), self.trials)?;
        writeln!(f, "encode: {:10.3} ms  {:8.2} MB/s", ms(self.encode), mbps(self.encode))?;
        writeln!(
            f,
            "decode: {:10.3} ms  {:8.2} MB/s  ({} errors per word)",
            ms(self.decode),
            mbps(self.decode),
            p.capacity()
        )?;
        let t = &self.encode_ops;
        writeln!(
            f,
            "encode ops: {} additions, {} multiplications, {} forward / {} inverse transforms",
            t.additions, t.multiplications, t.forward_calls, t.inverse_calls
        )?;
        if !self.scaling.is_empty() {
            writeln!(f, "\ndecode time vs n (rate 1/2, full capacity):")?;
            writeln!(f, "{:>4} {:>8} {:>12} {:>14}", "m", "n", "time ms", "ns / n lg^2 n")?;
            for r in &self.scaling {
                let n = r.n as f64;
                let norm = r.decode.as_secs_f64() * 1e9 / (n * n.log2().powi(2));
                writeln!(f, "{:>4} {:>8} {:>12.3} {:>14.4}", r.m, r.n, ms(r.decode), norm)?;
            }
            if let Some(e) = self.scaling_exponent() {
                writeln!(f, "fit exponent vs n lg^2 n: {e:.3}")?;
            }
        }
        if let Some((slow, fast)) = self.baseline {
            writeln!(
                f,
                "\npower-sum baseline at m = 12: {:.3} ms vs {:.3} ms ({:.1}x)",
                ms(slow),
                ms(fast),
                slow.as_secs_f64() / fast.as_secs_f64()
            )?;
        }
        Ok(())
    }
}

struct Words {
    rng: Xoshiro256StarStar,
}

impl Words {
    fn elem(&mut self, m: u32) -> FieldElem {
        (self.rng.next_u64() & ((1 << m) - 1)) as FieldElem
    }

    fn message(&mut self, p: CodeParams) -> Vec<FieldElem> {
        (0..p.k()).map(|_| self.elem(p.m())).collect()
    }

    // A codeword with `capacity` errors at distinct positions.
    fn noisy(&mut self, codec: &RsCodec) -> Result<(Vec<FieldElem>, Vec<FieldElem>), CliError> {
        let p = codec.params();
        let clean = codec.encode(&self.message(p))?.into_symbols();
        let mut w = clean.clone();
        let mut hit = 0;
        while hit < p.capacity() {
            let i = (self.rng.next_u64() % p.n() as u64) as usize;
            if w[i] == clean[i] {
                w[i] ^= 1 + (self.rng.next_u64() % ((1 << p.m()) - 1)) as FieldElem;
                hit += 1;
            }
        }
        Ok((clean, w))
    }
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

fn time_decode(codec: &RsCodec, words: &mut Words, trials: usize) -> Result<Duration, CliError> {
    let mut times = Vec::with_capacity(trials);
    for _ in 0..trials {
        let (clean, w) = words.noisy(codec)?;
        let start = Instant::now();
        let out = codec.decode(&w)?;
        times.push(start.elapsed());
        if out.corrected.symbols() != clean {
            return Err(CliError::Bench("decoder returned the wrong codeword".into()));
        }
    }
    Ok(median(times))
}

/// Runs the benchmark. `scaling` adds the m = 10..=16 table and the
/// m = 12 baseline comparison.
pub fn run_bench(params: CodeParams, trials: usize, scaling: bool) -> Result<BenchReport, CliError> {
    let trials = trials.max(1);
    let mut words = Words { rng: Xoshiro256StarStar::seed_from_u64(0x5eed) };
    let codec = RsCodec::new(params)?;

    let mut enc = Vec::with_capacity(trials);
    let mut encode_ops = OpTally::default();
    for i in 0..trials {
        let msg = words.message(params);
        let start = Instant::now();
        let cw = if i == 0 {
            codec.encode_with_tally(&msg, &mut encode_ops)?
        } else {
            codec.encode(&msg)?
        };
        enc.push(start.elapsed());
        std::hint::black_box(cw);
    }
    let decode = time_decode(&codec, &mut words, trials)?;

    let mut rows = Vec::new();
    let mut baseline = None;
    if scaling {
        for m in 10..=16 {
            let c = RsCodec::new(CodeParams::new(m, m - 1)?)?;
            let d = time_decode(&c, &mut words, trials)?;
            rows.push(ScalingRow { m, n: 1 << m, decode: d });
        }
        let c = RsCodec::new(CodeParams::new(12, 11)?)?;
        let (clean, w) = words.noisy(&c)?;
        let start = Instant::now();
        let fixed = classic_decode(c.basis().field(), c.basis().basis(), 11, &w)
            .map_err(|e| CliError::Bench(format!("baseline decoder failed: {e}")))?;
        let slow = start.elapsed();
        if fixed != clean {
            return Err(CliError::Bench("baseline decoder returned the wrong codeword".into()));
        }
        let fast = rows.iter().find(|r| r.m == 12).map(|r| r.decode).unwrap_or_default();
        baseline = Some((slow, fast));
    }

    Ok(BenchReport {
        params,
        trials,
        encode: median(enc),
        decode,
        encode_ops,
        scaling: rows,
        baseline,
    })
}
