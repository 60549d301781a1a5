//! Slow reference implementations for testing.
//!
//! Nothing here touches the transform, division, half-GCD or codec code: the
//! subspace polynomials are evaluated as products over their root sets, basis
//! conversions go through explicit monomial expansions, and arithmetic on
//! monomial-basis polynomials is schoolbook. Field products use the table
//! multiplier except in [`clmul_reduce`], which checks that multiplier.

use crate::basis::{Poly, PolyX};
use crate::error::{DecodeFailure, Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Marker for coefficients in the standard basis `1, x, x^2, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monomial {}

/// A polynomial in the monomial basis.
pub type PolyMono = Poly<Monomial>;

/// Carryless product reduced modulo `poly`, bit by bit.
pub fn clmul_reduce(a: FieldElem, b: FieldElem, poly: u32, m: u32) -> FieldElem {
    let mut acc = 0u32;
    let mut x = a as u32;
    for i in 0..m {
        if (b >> i) & 1 == 1 {
            acc ^= x;
        }
        x <<= 1;
        if (x >> m) & 1 == 1 {
            x ^= poly;
        }
    }
    acc as FieldElem
}

/// `sum of v_j over the set bits of i`.
pub fn omega(v: &[FieldElem], i: usize) -> FieldElem {
    v.iter()
        .enumerate()
        .filter(|(j, _)| (i >> j) & 1 == 1)
        .fold(0, |acc, (_, &x)| acc ^ x)
}

/// `s_j(a) = prod over b in span(v_0..v_(j-1)) of (a - b)`.
pub fn subspace_eval(f: &FieldCtx, v: &[FieldElem], j: usize, a: FieldElem) -> FieldElem {
    (0..1usize << j).fold(1, |acc, i| f.mul(acc, a ^ omega(v, i)))
}

/// Product of the nonzero elements of `span(v_0..v_(j-1))`.
pub fn subspace_derivative(f: &FieldCtx, v: &[FieldElem], j: usize) -> FieldElem {
    (1..1usize << j).fold(1, |acc, i| f.mul(acc, omega(v, i)))
}

/// `p_i = prod of s_j(v_j)` over the set bits of `i`.
pub fn norm_const(f: &FieldCtx, v: &[FieldElem], i: usize) -> FieldElem {
    (0..v.len())
        .filter(|j| (i >> j) & 1 == 1)
        .fold(1, |acc, j| f.mul(acc, subspace_eval(f, v, j, v[j])))
}

/// `X_i(a)`, or `X̄_i(a)` when `normalized`.
pub fn eval_basis_fn(f: &FieldCtx, v: &[FieldElem], i: usize, a: FieldElem, normalized: bool) -> FieldElem {
    let x = (0..v.len())
        .filter(|j| (i >> j) & 1 == 1)
        .fold(1, |acc, j| f.mul(acc, subspace_eval(f, v, j, a)));
    if normalized {
        f.div(x, norm_const(f, v, i)).expect("independent basis")
    } else {
        x
    }
}

/// `sum_l d_l * basis_l(a)` at each point.
pub fn naive_multipoint(
    f: &FieldCtx,
    v: &[FieldElem],
    coeffs: &[FieldElem],
    points: &[FieldElem],
    normalized: bool,
) -> Vec<FieldElem> {
    // Only s_j with 2^j <= deg + 1 appear; evaluate each once per point.
    let levels = (usize::BITS - coeffs.len().saturating_sub(1).leading_zeros()) as usize;
    let levels = levels.min(v.len());
    let pj: Vec<FieldElem> = (0..levels).map(|j| subspace_eval(f, v, j, v[j])).collect();
    points
        .iter()
        .map(|&a| {
            let sj: Vec<FieldElem> = (0..levels).map(|j| subspace_eval(f, v, j, a)).collect();
            coeffs.iter().enumerate().fold(0, |acc, (l, &c)| {
                let mut x = 1;
                let mut p = 1;
                for j in 0..levels {
                    if (l >> j) & 1 == 1 {
                        x = f.mul(x, sj[j]);
                        p = f.mul(p, pj[j]);
                    }
                }
                if normalized {
                    x = f.div(x, p).expect("independent basis");
                }
                acc ^ f.mul(c, x)
            })
        })
        .collect()
}

pub fn mono_eval(f: &FieldCtx, p: &PolyMono, a: FieldElem) -> FieldElem {
    p.coeffs().iter().rev().fold(0, |acc, &c| f.mul(acc, a) ^ c)
}

pub fn mono_scale(f: &FieldCtx, p: &PolyMono, c: FieldElem) -> PolyMono {
    PolyMono::from_coeffs(p.coeffs().iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mono_mul(f: &FieldCtx, a: &PolyMono, b: &PolyMono) -> PolyMono {
    if a.is_zero() || b.is_zero() {
        return PolyMono::zero();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.coeffs().iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs().iter().enumerate() {
            out[i + j] ^= f.mul(x, y);
        }
    }
    PolyMono::from_coeffs(out)
}

/// Schoolbook long division.
pub fn mono_divrem(f: &FieldCtx, a: &PolyMono, b: &PolyMono) -> Result<(PolyMono, PolyMono)> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let inv = f.inv(b.coeff(db))?;
    let mut r = a.coeffs().to_vec();
    if r.len() <= db {
        return Ok((PolyMono::zero(), a.clone()));
    }
    let mut q = vec![0; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = f.mul(r[i + db], inv);
        q[i] = c;
        if c != 0 {
            for (j, &y) in b.coeffs().iter().enumerate() {
                r[i + j] ^= f.mul(c, y);
            }
        }
    }
    r.truncate(db);
    Ok((PolyMono::from_coeffs(q), PolyMono::from_coeffs(r)))
}

pub fn mono_derivative(p: &PolyMono) -> PolyMono {
    // d/dx x^i = i x^(i-1), and i is 0 or 1 in characteristic 2
    PolyMono::from_coeffs(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { 0 })
            .collect(),
    )
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn mono_gcd(f: &FieldCtx, a: &PolyMono, b: &PolyMono) -> PolyMono {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = mono_divrem(f, &x, &y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    match x.lead() {
        Some(l) => mono_scale(f, &x, f.inv(l).expect("nonzero lead")),
        None => x,
    }
}

/// One row of the extended Euclidean iteration: `a * u + b * v = r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EeaRow {
    pub r: PolyMono,
    pub u: PolyMono,
    pub v: PolyMono,
}

/// Classic extended Euclid on `(a, b)`, stopping at the first remainder of
/// degree below `stop_degree`. Returns that row and the one before it.
pub fn mono_eea(f: &FieldCtx, a: &PolyMono, b: &PolyMono, stop_degree: usize) -> (EeaRow, EeaRow) {
    let one = PolyMono::constant(1);
    let mut prev = EeaRow { r: a.clone(), u: one.clone(), v: PolyMono::zero() };
    let mut cur = EeaRow { r: b.clone(), u: PolyMono::zero(), v: one };
    while cur.r.degree().is_some_and(|d| d >= stop_degree) {
        let (q, r) = mono_divrem(f, &prev.r, &cur.r).expect("nonzero divisor");
        let next = EeaRow {
            r,
            u: &prev.u + &mono_mul(f, &q, &cur.u),
            v: &prev.v + &mono_mul(f, &q, &cur.v),
        };
        prev = std::mem::replace(&mut cur, next);
    }
    (prev, cur)
}

/// Monomial expansions of the subspace polynomials and the `X` basis.
///
/// `s_(j+1) = s_j^2 + c_j s_j`, where `c_j` is `s_j(v_j)` read off the
/// expansion for `j < m`, and 1 for the extension levels beyond the field.
#[derive(Clone, Debug)]
pub struct MonoBasis {
    field: FieldCtx,
    v: Vec<FieldElem>,
    s: Vec<PolyMono>,
}

impl MonoBasis {
    /// Expansions of `s_0 .. s_levels`.
    pub fn new(field: FieldCtx, v: Vec<FieldElem>, levels: usize) -> Self {
        let mut s = vec![PolyMono::from_slice(&[0, 1])];
        for j in 0..levels {
            let sj = &s[j];
            let c = if j < v.len() { mono_eval(&field, sj, v[j]) } else { 1 };
            let next = &mono_mul(&field, sj, sj) + &mono_scale(&field, sj, c);
            s.push(next);
        }
        Self { field, v, s }
    }

    /// Unit basis of the given field, with at least two extension levels.
    pub fn unit(field: FieldCtx) -> Self {
        let m = field.m() as usize;
        let v = (0..m).map(|j| 1 << j).collect();
        Self::new(field, v, (m + 2).max(12))
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn basis(&self) -> &[FieldElem] {
        &self.v
    }

    /// Monomial expansion of `s_j`.
    pub fn subspace_poly(&self, j: usize) -> &PolyMono {
        &self.s[j]
    }

    /// Monomial expansion of `X_i`.
    pub fn x_basis_poly(&self, i: usize) -> PolyMono {
        (0..self.s.len())
            .filter(|j| (i >> j) & 1 == 1)
            .fold(PolyMono::constant(1), |acc, j| mono_mul(&self.field, &acc, &self.s[j]))
    }

    /// Expands `p` as `P_lo + s_(k-1) P_hi` recursively.
    pub fn x_to_mono(&self, p: &PolyX) -> PolyMono {
        self.expand(p.coeffs())
    }

    fn expand(&self, c: &[FieldElem]) -> PolyMono {
        if c.len() <= 1 {
            return PolyMono::from_slice(c);
        }
        let half = c.len().next_power_of_two() / 2;
        let k = half.trailing_zeros() as usize;
        let lo = self.expand(&c[..half]);
        let hi = self.expand(&c[half..]);
        &lo + &mono_mul(&self.field, &self.s[k], &hi)
    }

    /// Greedy conversion: repeatedly cancels the leading term against the
    /// monic `X_deg`.
    pub fn mono_to_x(&self, p: &PolyMono) -> PolyX {
        let mut rest = p.clone();
        let mut out = vec![0; p.len()];
        while let Some(d) = rest.degree() {
            let c = rest.coeff(d);
            out[d] = c;
            rest += &mono_scale(&self.field, &self.x_basis_poly(d), c);
        }
        PolyX::from_coeffs(out)
    }
}

/// A classic quadratic-time decoder for the same code, used as a cross-check
/// and as a speed baseline: power-sum syndromes, Berlekamp-Massey,
/// exhaustive root search and Forney's formula.
///
/// `recv[i]` is the symbol at the field point `omega_i`; codewords satisfy
/// `sum_i recv[i] * omega_i^j = 0` for `j < T` (with `0^0 = 1`). Returns the
/// corrected word.
pub fn classic_decode(
    f: &FieldCtx,
    v: &[FieldElem],
    t: u32,
    recv: &[FieldElem],
) -> std::result::Result<Vec<FieldElem>, DecodeFailure> {
    let tt = 1usize << t;
    let n = recv.len();
    let points: Vec<FieldElem> = (0..n).map(|i| omega(v, i)).collect();

    let mut synd = vec![0 as FieldElem; tt];
    for (&r, &a) in recv.iter().zip(&points) {
        if r == 0 {
            continue;
        }
        let mut pw = 1;
        for s in synd.iter_mut() {
            *s ^= f.mul(r, pw);
            pw = f.mul(pw, a);
        }
    }
    if synd.iter().all(|&s| s == 0) {
        return Ok(recv.to_vec());
    }

    // Berlekamp-Massey for the connection polynomial C(z) = prod (1 - X_i z).
    let mut c = vec![1 as FieldElem];
    let mut b = vec![1 as FieldElem];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last = 1 as FieldElem;
    for nn in 0..tt {
        let mut d = synd[nn];
        for i in 1..=len.min(c.len() - 1) {
            d ^= f.mul(c[i], synd[nn - i]);
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let coef = f.div(d, last).expect("nonzero discrepancy base");
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + shift] ^= f.mul(coef, bi);
        }
        if 2 * len <= nn {
            len = nn + 1 - len;
            b = prev;
            last = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    while c.len() > 1 && c.last() == Some(&0) {
        c.pop();
    }
    if len > tt / 2 {
        return Err(DecodeFailure::MissingRoots { degree: len, roots: 0 });
    }
    let cpoly = PolyMono::from_coeffs(c);
    let cdeg = cpoly.degree().unwrap_or(0);

    // A locator at 0 contributes the factor 1, so it shows up as len > deg C.
    let mut positions: Vec<usize> = (1..n)
        .filter(|&i| mono_eval(f, &cpoly, f.inv(points[i]).expect("nonzero point")) == 0)
        .collect();
    let zero_pos = points.iter().position(|&a| a == 0);
    let has_zero = len > cdeg;
    if positions.len() != cdeg || len - cdeg > 1 {
        return Err(DecodeFailure::MissingRoots { degree: len, roots: positions.len() });
    }

    // Omega(z) = S(z) C(z) mod z^T; e_i = X_i Omega(X_i^-1) / C'(X_i^-1)
    let spoly = PolyMono::from_slice(&synd);
    let mut om = mono_mul(f, &spoly, &cpoly).into_coeffs();
    om.truncate(tt);
    let om = PolyMono::from_coeffs(om);
    let dc = mono_derivative(&cpoly);
    let mut out = recv.to_vec();
    let mut s0 = synd[0];
    for &i in &positions {
        let xi = points[i];
        let xinv = f.inv(xi).expect("nonzero point");
        let den = mono_eval(f, &dc, xinv);
        if den == 0 {
            return Err(DecodeFailure::RepeatedRoot(i));
        }
        let e = f.mul(xi, f.div(mono_eval(f, &om, xinv), den).expect("nonzero"));
        if e == 0 {
            return Err(DecodeFailure::ZeroErrorValue(i));
        }
        out[i] ^= e;
        s0 ^= e;
    }
    if has_zero {
        let z = zero_pos.ok_or(DecodeFailure::MissingRoots { degree: len, roots: cdeg })?;
        if s0 == 0 {
            return Err(DecodeFailure::ZeroErrorValue(z));
        }
        out[z] ^= s0;
        positions.push(z);
    } else if s0 != 0 {
        return Err(DecodeFailure::ResidualSyndrome);
    }
    Ok(out)
}
