use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rsxf_core::poly_ops::{divrem, mul};
use rsxf_core::transform::{fft_xbar_in_place, ifft_xbar_in_place};
use rsxf_core::{BasisCtx, PolyX};
use std::hint::black_box;

// Deterministic filler; quality does not matter here.
fn filler(len: usize, seed: u32) -> Vec<u16> {
    let mut x = seed.wrapping_mul(2654435761) | 1;
    (0..len)
        .map(|_| {
            x ^= x << 13;
            x ^= x >> 17;
            x ^= x << 5;
            x as u16
        })
        .collect()
}

fn transforms(c: &mut Criterion) {
    let ctx = BasisCtx::with_dimension(16).unwrap();
    let mut g = c.benchmark_group("fft_xbar");
    for k in [10u32, 12, 14, 16] {
        let data = filler(1 << k, k);
        g.throughput(Throughput::Elements(1 << k));
        g.bench_with_input(BenchmarkId::new("forward", 1 << k), &data, |b, d| {
            let mut buf = d.clone();
            b.iter(|| fft_xbar_in_place(&ctx, black_box(&mut buf), 0x8000, None).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("inverse", 1 << k), &data, |b, d| {
            let mut buf = d.clone();
            b.iter(|| ifft_xbar_in_place(&ctx, black_box(&mut buf), 0x8000, None).unwrap())
        });
    }
    g.finish();
}

fn poly_arith(c: &mut Criterion) {
    let ctx = BasisCtx::with_dimension(16).unwrap();
    let mut g = c.benchmark_group("poly");
    for d in [256usize, 2048, 16384] {
        let mut a = filler(2 * d, d as u32);
        let mut b = filler(d, d as u32 + 1);
        *a.last_mut().unwrap() |= 1;
        *b.last_mut().unwrap() |= 1;
        let (a, b) = (PolyX::from_coeffs(a), PolyX::from_coeffs(b));
        g.bench_function(BenchmarkId::new("mul", d), |bn| bn.iter(|| mul(&ctx, &b, &b).unwrap()));
        g.bench_function(BenchmarkId::new("divrem", d), |bn| bn.iter(|| divrem(&ctx, &a, &b).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, transforms, poly_arith);
criterion_main!(benches);
