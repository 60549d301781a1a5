mod common;

use common::*;
use rand::Rng;
use rsxf_core::halfgcd::{hgcd, mid_form, solve_key_equation, split3, PolyMat2, PolyVec2};
use rsxf_core::oracle::{mono_eea, mono_gcd, MonoBasis};
use rsxf_core::poly_ops::{mul, mul_subspace};
use rsxf_core::{BasisCtx, PolyX};

fn d(p: &PolyX) -> isize {
    p.degree().map_or(-1, |x| x as isize)
}

/// Checks `Z = M [a; b]` and the degree conditions on `Z` and `M`.
///
/// Row/column dominance is checked for every `M` other than the identity,
/// which is only returned when no Euclidean step was taken.
pub fn check_hgcd(ctx: &BasisCtx, a: &PolyX, b: &PolyX, g: u32, z: &PolyVec2, m: &PolyMat2) {
    assert_eq!(&m.apply(ctx, a, b).unwrap(), z, "Z != M [a; b]");
    let half = 1isize << (g - 1);
    assert!(d(&z.z0) >= half, "deg z0 = {} < {half}", d(&z.z0));
    assert!(d(&z.z1) < half, "deg z1 = {} >= {half}", d(&z.z1));
    assert!(d(&m.m11) <= d(a) - d(&z.z0), "deg m11 too large");
    if *m != PolyMat2::identity() {
        assert!(d(&m.m00) <= d(&m.m01) && d(&m.m10) <= d(&m.m11), "row dominance");
        assert!(d(&m.m00) <= d(&m.m10) && d(&m.m01) <= d(&m.m11), "column dominance");
    }
}

#[test]
fn random_inputs_meet_conditions() {
    let (ctx, _) = ctx_and_oracle(12);
    let mut r = rng(20);
    for g in 1..=10u32 {
        for _ in 0..60 {
            let da = r.random_range((1usize << (g - 1))..(1 << g));
            let db = r.random_range(0..=da);
            let a: PolyX = poly_of_degree(&mut r, 12, da);
            let b: PolyX = poly_of_degree(&mut r, 12, db);
            let (z, m) = hgcd(&ctx, &a, &b, g).unwrap();
            check_hgcd(&ctx, &a, &b, g, &z, &m);
        }
    }
}

#[test]
fn equal_degree_inputs() {
    let (ctx, _) = ctx_and_oracle(8);
    let mut r = rng(21);
    for g in 1..=7u32 {
        for _ in 0..40 {
            let da = (1usize << g) - 1;
            let a: PolyX = poly_of_degree(&mut r, 8, da);
            let b: PolyX = poly_of_degree(&mut r, 8, da);
            let (z, m) = hgcd(&ctx, &a, &b, g).unwrap();
            check_hgcd(&ctx, &a, &b, g, &z, &m);
        }
    }
}

#[test]
fn gcd_is_preserved() {
    let (ctx, mb) = ctx_and_oracle(8);
    let f = ctx.field();
    let mut r = rng(22);
    for g in 1..=6u32 {
        for _ in 0..40 {
            // plant a common factor so gcds are often nontrivial
            let dc = r.random_range(0..(1usize << (g - 1)));
            let c: PolyX = poly_of_degree(&mut r, 8, dc);
            let room = (1usize << g) - 1 - dc;
            let da = r.random_range(((1usize << (g - 1)).saturating_sub(dc))..=room);
            let db = r.random_range(0..=da);
            let a = mul(&ctx, &c, &poly_of_degree(&mut r, 8, da)).unwrap();
            let b = mul(&ctx, &c, &poly_of_degree(&mut r, 8, db)).unwrap();
            let (z, _) = hgcd(&ctx, &a, &b, g).unwrap();
            let want = mono_gcd(f, &mb.x_to_mono(&a), &mb.x_to_mono(&b));
            let got = mono_gcd(f, &mb.x_to_mono(&z.z0), &mb.x_to_mono(&z.z1));
            assert_eq!(got, want);
        }
    }
}

#[test]
fn remainder_agrees_with_classic_euclid() {
    // The half-GCD stops at the first remainder of degree < 2^(g-1); that
    // remainder is determined up to a scalar by the Euclidean sequence.
    let (ctx, mb) = ctx_and_oracle(7);
    let f = ctx.field();
    let mut r = rng(23);
    for g in 2..=6u32 {
        for _ in 0..40 {
            let da = r.random_range((1usize << (g - 1))..(1 << g));
            let db = r.random_range((1usize << (g - 1))..=da);
            let a: PolyX = poly_of_degree(&mut r, 7, da);
            let b: PolyX = poly_of_degree(&mut r, 7, db);
            let (z, _) = hgcd(&ctx, &a, &b, g).unwrap();
            let (prev, cur) = mono_eea(f, &mb.x_to_mono(&a), &mb.x_to_mono(&b), 1 << (g - 1));
            let monic = |p: &rsxf_core::oracle::PolyMono| match p.lead() {
                Some(l) => rsxf_core::oracle::mono_scale(f, p, f.inv(l).unwrap()),
                None => p.clone(),
            };
            assert_eq!(monic(&mb.x_to_mono(&z.z1)), monic(&cur.r));
            assert_eq!(monic(&mb.x_to_mono(&z.z0)), monic(&prev.r));
        }
    }
}

#[test]
fn split3_recombines() {
    let (ctx, mb): (BasisCtx, MonoBasis) = ctx_and_oracle(10);
    let mut r = rng(24);
    for g in 2..=9u32 {
        for _ in 0..20 {
            let a: PolyX = poly_below(&mut r, 10, 1 << g);
            let (ll, lh, h) = split3(&a, g);
            let j = (g - 2) as usize;
            // a = a_LL + s_(g-2) a_LH + s_(g-1) a_H
            let rebuilt = &(&ll + &mul_subspace(&ctx, &lh, j).unwrap())
                + &mul_subspace(&ctx, &h, j + 1).unwrap();
            assert_eq!(rebuilt, a);
            let mid = mid_form(&ctx, &lh, &h, g).unwrap();
            assert_eq!(&ll + &mul_subspace(&ctx, &mid, j).unwrap(), a);
            let _ = &mb;
        }
    }
}

#[test]
fn key_equation_residual() {
    let (ctx, _) = ctx_and_oracle(10);
    let mut r = rng(25);
    for t in 1..=9u32 {
        let tt = 1usize << t;
        for _ in 0..30 {
            let ds = r.random_range(tt / 2..tt);
            let s: PolyX = poly_of_degree(&mut r, 10, ds);
            let (lambda, q) = solve_key_equation(&ctx, &s, t).unwrap();
            assert!(d(&lambda) <= (tt / 2) as isize);
            let z = &mul(&ctx, &lambda, &s).unwrap() + &mul(&ctx, &q, &PolyX::basis_elem(tt)).unwrap();
            assert!(d(&z) < (tt / 2) as isize, "t={t} deg z = {}", d(&z));
        }
    }
}
