//! The F_2-basis `v_0 .. v_{m-1}` of GF(2^m), its subspace polynomials and the
//! polynomial bases built from them.
//!
//! With `V_j = span(v_0, .., v_{j-1})`, the subspace polynomial `s_j(x)` is the
//! monic polynomial vanishing exactly on `V_j`. It satisfies
//! `s_0(x) = x` and `s_{j+1}(x) = s_j(x)^2 + s_j(v_j) * s_j(x)`.
//!
//! The monic basis is `X_i(x) = prod_j s_j(x)^{i_j}` over the binary digits of
//! `i`; the normalized basis divides `X_i` by `p_i = prod_j s_j(v_j)^{i_j}`.
//!
//! Polynomials whose degree reaches `2^m` (products formed while dividing
//! large operands) continue the chain past the field with level constant 1:
//! `s_{j+1} = s_j^2 + s_j` for `j >= m`. This is the subspace polynomial chain
//! of an extension-field basis element `v_j` with `s_j(v_j) = 1`, so every
//! identity of the chain still holds, and all coefficients stay in GF(2^m).

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Levels of the subspace-polynomial chain available beyond the field
/// dimension.
pub const EXTRA_LEVELS: u32 = 2;

/// Small fields still get this many levels, so that polynomials of moderate
/// degree can be divided over them.
pub const MIN_LEVELS: u32 = 14;

/// Marker for coefficients in the monic basis `X_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monic {}

/// Marker for coefficients in the normalized basis `X_i / p_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalized {}

/// A polynomial stored by its coefficients in one of the two bases.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient vector and `degree()` returns `None` for it.
pub struct Poly<B> {
    coeffs: Vec<FieldElem>,
    basis: PhantomData<fn() -> B>,
}

/// Coefficients in the monic basis `X`.
pub type PolyX = Poly<Monic>;
/// Coefficients in the normalized basis `X̄`.
pub type PolyXbar = Poly<Normalized>;

impl<B> Poly<B> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new(), basis: PhantomData }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The single basis polynomial with index `i`, coefficient 1.
    pub fn basis_elem(i: usize) -> Self {
        let mut coeffs = vec![0; i + 1];
        coeffs[i] = 1;
        Self { coeffs, basis: PhantomData }
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Self {
        trim(&mut coeffs);
        Self { coeffs, basis: PhantomData }
    }

    pub fn from_slice(coeffs: &[FieldElem]) -> Self {
        Self::from_coeffs(coeffs.to_vec())
    }

    #[inline]
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    /// Coefficient `i`, zero past the end.
    #[inline]
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored coefficients (`degree + 1`, or 0).
    #[inline]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Top coefficient. Since every `X_i` is monic this is also the leading
    /// coefficient of the represented polynomial in the monic basis.
    pub fn lead(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    /// Coefficients zero-padded to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Result<Vec<FieldElem>> {
        if self.coeffs.len() > len {
            return Err(Error::PolyTooLong { degree: self.coeffs.len() - 1, len });
        }
        let mut out = self.coeffs.clone();
        out.resize(len, 0);
        Ok(out)
    }

    /// Coefficients `range`, as a new polynomial in the same basis.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        let end = end.min(self.coeffs.len());
        if start >= end {
            return Self::zero();
        }
        Self::from_slice(&self.coeffs[start..end])
    }

    pub(crate) fn map_coeffs(&self, f: impl FnMut(usize, FieldElem) -> FieldElem) -> Self {
        let mut f = f;
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| f(i, c))
                .collect(),
        )
    }
}

impl<B> Clone for Poly<B> {
    fn clone(&self) -> Self {
        Self { coeffs: self.coeffs.clone(), basis: PhantomData }
    }
}

impl<B> PartialEq for Poly<B> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<B> Eq for Poly<B> {}

impl<B> Default for Poly<B> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<B> fmt::Debug for Poly<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<B> AddAssign<&Poly<B>> for Poly<B> {
    fn add_assign(&mut self, rhs: &Poly<B>) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), 0);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a ^= b;
        }
        trim(&mut self.coeffs);
    }
}

impl<B> Add for &Poly<B> {
    type Output = Poly<B>;

    fn add(self, rhs: &Poly<B>) -> Poly<B> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B> Add for Poly<B> {
    type Output = Poly<B>;

    fn add(mut self, rhs: Poly<B>) -> Poly<B> {
        self += &rhs;
        self
    }
}

pub(crate) fn trim(v: &mut Vec<FieldElem>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// The chosen basis together with every table derived from it.
///
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct BasisCtx {
    field: FieldCtx,
    v: Vec<FieldElem>,
    // Recursion constants c_j = s_j(v_j); 1 past the field dimension.
    level_consts: Vec<FieldElem>,
    level_inv: Vec<FieldElem>,
    // s'_j = prod of the nonzero elements of V_j.
    sderiv: Vec<FieldElem>,
    // twiddle[j][i] = s_j(omega_i) / s_j(v_j)
    twiddle: Vec<Vec<FieldElem>>,
    norm: Vec<FieldElem>,
    norm_inv: Vec<FieldElem>,
}

impl BasisCtx {
    /// Builds the tables for basis `v` of the given field.
    pub fn new(field: FieldCtx, v: Vec<FieldElem>) -> Result<Self> {
        let m = field.m() as usize;
        if v.len() != m {
            return Err(Error::BasisLength { expected: m, got: v.len() });
        }
        if let Some(bad) = v.iter().position(|&x| !field.contains(x)) {
            return Err(Error::DependentBasis(bad));
        }

        let levels = (m + EXTRA_LEVELS as usize).max(MIN_LEVELS as usize);
        let mut level_consts = Vec::with_capacity(levels);
        for (j, &vj) in v.iter().enumerate() {
            let c = eval_chain(&field, &level_consts, j, vj);
            if c == 0 {
                return Err(Error::DependentBasis(j));
            }
            level_consts.push(c);
        }
        level_consts.resize(levels, 1);
        let level_inv = level_consts
            .iter()
            .map(|&c| field.inv(c).expect("nonzero level constant"))
            .collect();

        let mut sderiv = Vec::with_capacity(levels + 1);
        sderiv.push(1);
        for j in 0..levels {
            sderiv.push(field.mul(sderiv[j], level_consts[j]));
        }

        let size = 1usize << m;
        let mut twiddle = Vec::with_capacity(m);
        for j in 0..m {
            let scale = field.inv(level_consts[j])?;
            let mut table = vec![0 as FieldElem; size];
            // s_j is F_2-linear, so only the images of basis vectors are evaluated.
            for (b, &vb) in v.iter().enumerate() {
                let img = field.mul(eval_chain(&field, &level_consts, j, vb), scale);
                let half = 1usize << b;
                for i in 0..half {
                    table[half + i] = table[i] ^ img;
                }
            }
            twiddle.push(table);
        }

        let mut norm = vec![1 as FieldElem; size];
        for i in 1..size {
            let top = usize::BITS - 1 - i.leading_zeros();
            norm[i] = field.mul(norm[i ^ (1 << top)], level_consts[top as usize]);
        }
        let norm_inv = norm
            .iter()
            .map(|&p| field.inv(p).expect("nonzero normalization constant"))
            .collect();

        Ok(Self { field, v, level_consts, level_inv, sderiv, twiddle, norm, norm_inv })
    }

    /// Basis where `v_j` has only bit `j` set, so `omega(i) = i`.
    pub fn unit(field: FieldCtx) -> Result<Self> {
        let v = (0..field.m()).map(|j| 1 << j).collect();
        Self::new(field, v)
    }

    /// GF(2^m) with its default modulus and the unit basis.
    pub fn with_dimension(m: u32) -> Result<Self> {
        Self::unit(FieldCtx::with_default_poly(m)?)
    }

    #[inline]
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.field.m()
    }

    pub fn basis(&self) -> &[FieldElem] {
        &self.v
    }

    /// Number of subspace-polynomial levels available,
    /// `max(m + EXTRA_LEVELS, MIN_LEVELS)`. Products may reach degree
    /// `2^levels - 1`.
    #[inline]
    pub fn levels(&self) -> usize {
        self.level_consts.len()
    }

    /// `omega_i = sum of v_j over the set bits of i`.
    pub fn omega(&self, i: usize) -> FieldElem {
        debug_assert!(i < self.field.size());
        self.v
            .iter()
            .enumerate()
            .filter(|&(j, _)| (i >> j) & 1 == 1)
            .fold(0, |acc, (_, &vj)| acc ^ vj)
    }

    /// `s_j(x)` through `j` steps of the squaring recursion.
    pub fn subspace_eval(&self, j: usize, x: FieldElem) -> FieldElem {
        eval_chain(&self.field, &self.level_consts, j, x)
    }

    /// `s_j(v_j)` for `j < m`, and the unit constant used past the field.
    #[inline]
    pub fn level_const(&self, j: usize) -> FieldElem {
        self.level_consts[j]
    }

    #[inline]
    pub(crate) fn level_const_inv(&self, j: usize) -> FieldElem {
        self.level_inv[j]
    }

    /// The constant formal derivative of `s_j`.
    #[inline]
    pub fn subspace_derivative(&self, j: usize) -> FieldElem {
        self.sderiv[j]
    }

    /// `s_j(omega_i) / s_j(v_j)` for all `i < 2^m`.
    #[inline]
    pub fn twiddles(&self, j: usize) -> &[FieldElem] {
        &self.twiddle[j]
    }

    /// `p_i = prod_j s_j(v_j)^{i_j}`.
    #[inline]
    pub fn norm_const(&self, i: usize) -> FieldElem {
        self.norm[i]
    }

    #[inline]
    pub fn norm_const_inv(&self, i: usize) -> FieldElem {
        self.norm_inv[i]
    }

    pub(crate) fn norm_table(&self) -> &[FieldElem] {
        &self.norm
    }

    pub(crate) fn norm_inv_table(&self) -> &[FieldElem] {
        &self.norm_inv
    }

    /// Rescales normalized-basis coefficients into the monic basis.
    pub fn xbar_to_x(&self, p: &PolyXbar) -> Result<PolyX> {
        self.check_convertible(p.len())?;
        Ok(Poly::from_coeffs(
            p.coeffs()
                .iter()
                .zip(&self.norm_inv)
                .map(|(&c, &s)| self.field.mul(c, s))
                .collect(),
        ))
    }

    /// Rescales monic-basis coefficients into the normalized basis.
    pub fn x_to_xbar(&self, p: &PolyX) -> Result<PolyXbar> {
        self.check_convertible(p.len())?;
        Ok(Poly::from_coeffs(
            p.coeffs()
                .iter()
                .zip(&self.norm)
                .map(|(&c, &s)| self.field.mul(c, s))
                .collect(),
        ))
    }

    fn check_convertible(&self, len: usize) -> Result<()> {
        if len > self.field.size() {
            return Err(Error::PolyTooLong { degree: len - 1, len: self.field.size() });
        }
        Ok(())
    }
}

fn eval_chain(field: &FieldCtx, consts: &[FieldElem], j: usize, x: FieldElem) -> FieldElem {
    let mut y = x;
    for &c in &consts[..j] {
        y = field.mul(y, y) ^ field.mul(c, y);
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4_basis() -> BasisCtx {
        BasisCtx::new(FieldCtx::new(2, 0b111).unwrap(), vec![1, 2]).unwrap()
    }

    #[test]
    fn gf4_constants() {
        let b = gf4_basis();
        assert_eq!(b.level_const(0), 1);
        assert_eq!(b.level_const(1), 1);
        assert_eq!(b.omega(0), 0);
        assert_eq!(b.omega(3), 3);
        assert_eq!(b.subspace_eval(0, 3), 3);
        assert_eq!(b.subspace_eval(1, 3), 1);
        assert_eq!(b.norm_const(0), 1);
        assert_eq!(b.norm_const(3), 1);
    }

    #[test]
    fn gf4_conversion_is_identity() {
        let b = gf4_basis();
        let p = PolyXbar::from_slice(&[1, 2, 3, 1]);
        let x = b.xbar_to_x(&p).unwrap();
        assert_eq!(x.coeffs(), p.coeffs());
    }

    #[test]
    fn dependent_basis_rejected() {
        let f = FieldCtx::with_default_poly(4).unwrap();
        assert_eq!(
            BasisCtx::new(f.clone(), vec![1, 2, 2, 8]).unwrap_err(),
            Error::DependentBasis(2)
        );
        assert_eq!(
            BasisCtx::new(f.clone(), vec![1, 2, 3, 8]).unwrap_err(),
            Error::DependentBasis(2)
        );
        assert!(matches!(
            BasisCtx::new(f, vec![1, 2, 4]),
            Err(Error::BasisLength { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn twiddle_structure() {
        let f = FieldCtx::with_default_poly(6).unwrap();
        let b = BasisCtx::new(f, vec![3, 5, 9, 17, 33, 62]).unwrap();
        for j in 0..6 {
            let w = b.twiddles(j);
            assert_eq!(w[0], 0);
            assert_eq!(w[1 << j], 1);
            for i in 0..64 {
                assert_eq!(w[i] == 0, i < (1 << j), "j={j} i={i}");
                for l in 0..64 {
                    assert_eq!(w[i ^ l], w[i] ^ w[l]);
                }
            }
        }
    }

    #[test]
    fn unit_basis_omega_is_identity() {
        let b = BasisCtx::with_dimension(8).unwrap();
        for i in 0..256 {
            assert_eq!(b.omega(i), i as u16);
        }
    }

    #[test]
    fn norm_const_single_bit() {
        let b = BasisCtx::with_dimension(10).unwrap();
        for j in 0..10 {
            assert_eq!(b.norm_const(1 << j), b.level_const(j));
        }
    }

    #[test]
    fn full_chain_vanishes_on_field() {
        let b = BasisCtx::with_dimension(7).unwrap();
        for x in 0..128u16 {
            assert_eq!(b.subspace_eval(7, x), 0);
        }
        // product of all nonzero elements of GF(2^m) is 1
        assert_eq!(b.subspace_derivative(7), 1);
    }

    #[test]
    fn poly_trims_and_adds() {
        let p = PolyX::from_coeffs(vec![1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(PolyX::from_coeffs(vec![0, 0]).degree(), None);
        let q = PolyX::from_slice(&[1, 2]);
        assert!((&p + &q).is_zero());
        assert_eq!(PolyX::basis_elem(3).coeffs(), &[0, 0, 0, 1]);
        assert!(p.padded(1).is_err());
        assert_eq!(p.padded(4).unwrap(), vec![1, 2, 0, 0]);
    }
}
