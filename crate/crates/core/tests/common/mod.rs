#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsxf_core::oracle::MonoBasis;
use rsxf_core::{BasisCtx, FieldCtx, FieldElem, Poly, PolyX};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn elem(rng: &mut impl Rng, m: u32) -> FieldElem {
    rng.random_range(0..1u32 << m) as FieldElem
}

pub fn nonzero(rng: &mut impl Rng, m: u32) -> FieldElem {
    rng.random_range(1..1u32 << m) as FieldElem
}

/// Random polynomial of exactly degree `deg`.
pub fn poly_of_degree<B>(rng: &mut impl Rng, m: u32, deg: usize) -> Poly<B> {
    let mut c: Vec<FieldElem> = (0..deg).map(|_| elem(rng, m)).collect();
    c.push(nonzero(rng, m));
    Poly::from_coeffs(c)
}

/// Random polynomial with fewer than `len` coefficients (possibly zero).
pub fn poly_below<B>(rng: &mut impl Rng, m: u32, len: usize) -> Poly<B> {
    Poly::from_coeffs((0..len).map(|_| elem(rng, m)).collect())
}

/// A random basis of GF(2^m), rejecting dependent draws.
pub fn random_basis(rng: &mut impl Rng, field: &FieldCtx) -> Vec<FieldElem> {
    let m = field.m();
    loop {
        let v: Vec<FieldElem> = (0..m).map(|_| nonzero(rng, m)).collect();
        if BasisCtx::new(field.clone(), v.clone()).is_ok() {
            return v;
        }
    }
}

pub fn ctx_and_oracle(m: u32) -> (BasisCtx, MonoBasis) {
    let f = FieldCtx::with_default_poly(m).unwrap();
    (BasisCtx::unit(f.clone()).unwrap(), MonoBasis::unit(f))
}

pub fn deg(p: &PolyX) -> Option<usize> {
    p.degree()
}
