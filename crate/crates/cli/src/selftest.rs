//! Reduced oracle-equivalence checks for the `selftest` command.

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rsxf_core::halfgcd::{hgcd, PolyMat2};
use rsxf_core::oracle::{classic_decode, mono_derivative, mono_divrem, naive_multipoint, MonoBasis};
use rsxf_core::poly_ops::{divrem, formal_derivative, mul};
use rsxf_core::transform::{fft_xbar, fft_xbar_in_place, ifft_xbar};
use rsxf_core::{BasisCtx, CodeParams, FieldElem, OpTally, Poly, PolyX, PolyXbar, RsCodec};

use crate::commands::{corrupt_bytes, decode_bytes, encode_bytes};

/// Result of one named check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Result<String, String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

struct Gen(Xoshiro256StarStar);

type CheckFn = fn(&mut Gen) -> Result<String, String>;

impl Gen {
    fn elem(&mut self, m: u32) -> FieldElem {
        (self.0.next_u64() & ((1 << m) - 1)) as FieldElem
    }

    fn nonzero(&mut self, m: u32) -> FieldElem {
        loop {
            let x = self.elem(m);
            if x != 0 {
                return x;
            }
        }
    }

    fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }

    fn poly<B>(&mut self, m: u32, deg: usize) -> Poly<B> {
        let mut c: Vec<FieldElem> = (0..deg).map(|_| self.elem(m)).collect();
        c.push(self.nonzero(m));
        Poly::from_coeffs(c)
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn deg(p: &PolyX) -> isize {
    p.degree().map_or(-1, |d| d as isize)
}

fn transform(g: &mut Gen) -> Result<String, String> {
    let ctx = BasisCtx::with_dimension(8).map_err(|e| e.to_string())?;
    let v = ctx.basis().to_vec();
    for k in 0..=6u32 {
        for _ in 0..20 {
            let beta = g.elem(8);
            let d: PolyXbar = Poly::from_coeffs((0..1 << k).map(|_| g.elem(8)).collect());
            let got = fft_xbar(&ctx, &d, k, beta).map_err(|e| e.to_string())?;
            let pts: Vec<FieldElem> = (0..1usize << k).map(|i| ctx.omega(i) ^ beta).collect();
            ensure!(got.values() == &naive_multipoint(ctx.field(), &v, d.coeffs(), &pts, true)[..], "k = {k}");
            ensure!(ifft_xbar(&ctx, &got).map_err(|e| e.to_string())? == d, "inverse at k = {k}");
        }
    }
    Ok("140 transforms over GF(2^8)".into())
}

fn op_counts(g: &mut Gen) -> Result<String, String> {
    let ctx = BasisCtx::with_dimension(16).map_err(|e| e.to_string())?;
    let mut buf: Vec<FieldElem> = (0..1024).map(|_| g.elem(16)).collect();
    let mut t = OpTally::default();
    fft_xbar_in_place(&ctx, &mut buf, 1 << 15, Some(&mut t)).map_err(|e| e.to_string())?;
    ensure!(t.additions == 10240 && t.multiplications == 5120, "{} / {}", t.additions, t.multiplications);
    Ok("h = 1024: 10240 additions, 5120 multiplications".into())
}

fn division(g: &mut Gen) -> Result<String, String> {
    let ctx = BasisCtx::with_dimension(8).map_err(|e| e.to_string())?;
    let mb = MonoBasis::unit(ctx.field().clone());
    for _ in 0..100 {
        let (da, db) = (g.below(65), g.below(65));
        let a: PolyX = g.poly(8, da);
        let b: PolyX = g.poly(8, db);
        let (q, r) = divrem(&ctx, &a, &b).map_err(|e| e.to_string())?;
        ensure!(&mul(&ctx, &q, &b).map_err(|e| e.to_string())? + &r == a, "a != qb + r");
        let (wq, wr) = mono_divrem(ctx.field(), &mb.x_to_mono(&a), &mb.x_to_mono(&b)).map_err(|e| e.to_string())?;
        ensure!(mb.x_to_mono(&q) == wq && mb.x_to_mono(&r) == wr, "schoolbook mismatch at {da}/{db}");
    }
    Ok("100 pairs over GF(2^8)".into())
}

fn derivative(g: &mut Gen) -> Result<String, String> {
    let ctx = BasisCtx::with_dimension(8).map_err(|e| e.to_string())?;
    let mb = MonoBasis::unit(ctx.field().clone());
    for _ in 0..100 {
        let d = g.below(65);
        let p: PolyX = g.poly(8, d);
        ensure!(
            mb.x_to_mono(&formal_derivative(&ctx, &p)) == mono_derivative(&mb.x_to_mono(&p)),
            "mismatch"
        );
    }
    Ok("100 polynomials over GF(2^8)".into())
}

fn half_gcd(g: &mut Gen) -> Result<String, String> {
    let ctx = BasisCtx::with_dimension(12).map_err(|e| e.to_string())?;
    for gg in 1..=5u32 {
        let half = 1usize << (gg - 1);
        for _ in 0..50 {
            let da = half + g.below(half);
            let db = half + g.below(da - half + 1);
            let a: PolyX = g.poly(12, da);
            let b: PolyX = g.poly(12, db);
            let (z, m) = hgcd(&ctx, &a, &b, gg).map_err(|e| e.to_string())?;
            ensure!(m.apply(&ctx, &a, &b).map_err(|e| e.to_string())? == z, "Z != M [a; b]");
            ensure!(deg(&z.z0) >= half as isize && deg(&z.z1) < half as isize, "remainder degrees");
            ensure!(deg(&m.m11) <= deg(&a) - deg(&z.z0), "deg m11");
            ensure!(m != PolyMat2::identity(), "no step taken");
            ensure!(deg(&m.m00) <= deg(&m.m01) && deg(&m.m10) <= deg(&m.m11), "row dominance");
            ensure!(deg(&m.m00) <= deg(&m.m10) && deg(&m.m01) <= deg(&m.m11), "column dominance");
        }
    }
    Ok("250 inputs, g = 1..5".into())
}

fn round_trip(g: &mut Gen) -> Result<String, String> {
    let mut trials = 0;
    for (m, t) in [(4u32, 2u32), (8, 4), (10, 8)] {
        let c = RsCodec::new(CodeParams::new(m, t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let p = c.params();
        for _ in 0..50 {
            let msg: Vec<FieldElem> = (0..p.k()).map(|_| g.elem(m)).collect();
            let cw = c.encode(&msg).map_err(|e| e.to_string())?;
            let sum = c.blockwise_ifft_sum(cw.symbols()).map_err(|e| e.to_string())?;
            ensure!(sum.iter().all(|&x| x == 0), "({m},{t}) nonzero blockwise sum");
            let mut w = cw.symbols().to_vec();
            let errs = g.below(p.capacity() + 1);
            let mut hit = 0;
            while hit < errs {
                let i = g.below(p.n());
                if w[i] == cw.symbols()[i] {
                    w[i] ^= g.nonzero(m);
                    hit += 1;
                }
            }
            let out = c.decode(&w).map_err(|e| format!("({m},{t}) {errs} errors: {e}"))?;
            ensure!(out.corrected == cw, "({m},{t}) wrong codeword");
            let classic = classic_decode(c.basis().field(), c.basis().basis(), t, &w)
                .map_err(|e| format!("({m},{t}) baseline: {e}"))?;
            ensure!(classic == cw.symbols(), "({m},{t}) baseline disagrees");
            trials += 1;
        }
    }
    Ok(format!("{trials} noisy codewords agree with the power-sum decoder"))
}

fn container(g: &mut Gen) -> Result<String, String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(|e| e.to_string())?;
    let payload: Vec<u8> = (0..3000).map(|_| g.0.next_u32() as u8).collect();
    let params = CodeParams::new(10, 8).map_err(|e| e.to_string())?;
    let enc = encode_bytes(&payload, params, &pool).map_err(|e| e.to_string())?;
    let bad = corrupt_bytes(&enc, params.capacity(), 7).map_err(|e| e.to_string())?;
    let rep = decode_bytes(&bad, &pool).map_err(|e| e.to_string())?;
    ensure!(rep.payload.as_deref() == Some(&payload[..]), "payload not recovered");
    Ok(format!("{} chunks, {} symbols corrected", rep.chunks.len(), rep.corrected()))
}

/// Runs every check with a fixed seed.
pub fn run_selftest() -> Vec<Check> {
    let mut g = Gen(Xoshiro256StarStar::seed_from_u64(2024));
    let checks: [(&'static str, CheckFn); 7] = [
        ("transform vs naive evaluation", transform),
        ("butterfly counts", op_counts),
        ("division vs schoolbook", division),
        ("formal derivative", derivative),
        ("half-GCD conditions", half_gcd),
        ("codec round trip", round_trip),
        ("container round trip", container),
    ];
    checks
        .into_iter()
        .map(|(name, f)| Check { name, outcome: f(&mut g) })
        .collect()
}
