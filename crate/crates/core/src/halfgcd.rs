//! Divide-and-conquer extended Euclid ("half-GCD") in the `X` basis, and the
//! key-equation solver built on it.
//!
//! Polynomials are split at `s_(g-1)` (and `s_(g-2)` for the second recursive
//! call) instead of at powers of `x`; all quotients are exact index shifts.

use crate::basis::{BasisCtx, PolyX};
use crate::error::{Error, Result};
use crate::poly_ops::{divrem, mul, mul_subspace, shift_quotient};

/// A column vector `[z0; z1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVec2 {
    pub z0: PolyX,
    pub z1: PolyX,
}

/// A 2x2 matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat2 {
    pub m00: PolyX,
    pub m01: PolyX,
    pub m10: PolyX,
    pub m11: PolyX,
}

impl PolyMat2 {
    pub fn identity() -> Self {
        Self {
            m00: PolyX::constant(1),
            m01: PolyX::zero(),
            m10: PolyX::zero(),
            m11: PolyX::constant(1),
        }
    }

    /// `self * [a; b]`.
    pub fn apply(&self, ctx: &BasisCtx, a: &PolyX, b: &PolyX) -> Result<PolyVec2> {
        Ok(PolyVec2 {
            z0: &mul(ctx, &self.m00, a)? + &mul(ctx, &self.m01, b)?,
            z1: &mul(ctx, &self.m10, a)? + &mul(ctx, &self.m11, b)?,
        })
    }

    /// `self * rhs`.
    pub fn mul(&self, ctx: &BasisCtx, rhs: &PolyMat2) -> Result<PolyMat2> {
        let dot = |x: &PolyX, y: &PolyX, z: &PolyX, w: &PolyX| -> Result<PolyX> {
            Ok(&mul(ctx, x, y)? + &mul(ctx, z, w)?)
        };
        Ok(PolyMat2 {
            m00: dot(&self.m00, &rhs.m00, &self.m01, &rhs.m10)?,
            m01: dot(&self.m00, &rhs.m01, &self.m01, &rhs.m11)?,
            m10: dot(&self.m10, &rhs.m00, &self.m11, &rhs.m10)?,
            m11: dot(&self.m10, &rhs.m01, &self.m11, &rhs.m11)?,
        })
    }

    // [[0, 1], [1, q]] * self (the sign of q is immaterial in characteristic 2)
    fn euclid_step(&self, ctx: &BasisCtx, q: &PolyX) -> Result<PolyMat2> {
        Ok(PolyMat2 {
            m00: self.m10.clone(),
            m01: self.m11.clone(),
            m10: &self.m00 + &mul(ctx, q, &self.m10)?,
            m11: &self.m01 + &mul(ctx, q, &self.m11)?,
        })
    }
}

/// Splits `a` into the coefficient slices `[0, 2^(g-2))`, `[2^(g-2), 2^(g-1))`
/// and `[2^(g-1), ..)`, so that `a = a_LL + s_(g-2) a_LH + s_(g-1) a_H`.
pub fn split3(a: &PolyX, g: u32) -> (PolyX, PolyX, PolyX) {
    assert!(g >= 2, "split3 needs g >= 2");
    let q = 1usize << (g - 2);
    let h = 1usize << (g - 1);
    (a.slice(0, q), a.slice(q, h), a.slice(h, usize::MAX))
}

/// `a_LH + (s_(g-2) + s_(g-2)(v_(g-2))) a_H`, the polynomial with
/// `a = a_LL + s_(g-2) * mid`.
pub fn mid_form(ctx: &BasisCtx, lh: &PolyX, hi: &PolyX, g: u32) -> Result<PolyX> {
    let j = (g - 2) as usize;
    let c = ctx.level_const(j);
    let f = ctx.field();
    let mut out = mul_subspace(ctx, hi, j)?;
    out += &hi.map_coeffs(|_, x| f.mul(x, c));
    out += lh;
    Ok(out)
}

fn deg_lt(p: &PolyX, bound: usize) -> bool {
    p.degree().map_or(true, |d| d < bound)
}

/// Half-GCD of `a` and `b`, where `deg b <= deg a <= 2^g - 1`.
///
/// Returns `(Z, M)` with `Z = M [a; b]`, `deg z0 >= 2^(g-1)`,
/// `deg z1 < 2^(g-1)`, `deg m11 <= deg a - deg z0`, and the row/column
/// degree dominance of `M`. If `deg b < 2^(g-1)` already, `M` is the identity.
pub fn hgcd(ctx: &BasisCtx, a: &PolyX, b: &PolyX, g: u32) -> Result<(PolyVec2, PolyMat2)> {
    if b.degree() > a.degree() {
        return Err(Error::HgcdPrecondition(format!(
            "deg b = {:?} exceeds deg a = {:?}",
            b.degree(),
            a.degree()
        )));
    }
    if !deg_lt(a, 1usize << g) {
        return Err(Error::HgcdPrecondition(format!(
            "deg a = {:?} is not below 2^{g}",
            a.degree()
        )));
    }
    if g == 0 || deg_lt(b, 1usize << (g - 1)) {
        return Ok((PolyVec2 { z0: a.clone(), z1: b.clone() }, PolyMat2::identity()));
    }

    let half = 1usize << (g - 1);
    let (a_l, a_h) = (a.slice(0, half), shift_quotient(a, g - 1));
    let (b_l, b_h) = (b.slice(0, half), shift_quotient(b, g - 1));
    let (zh, mh) = hgcd(ctx, &a_h, &b_h, g - 1)?;

    // Z_H entries have degree < 2^(g-1), so multiplying by s_(g-1) is an index shift.
    let low = mh.apply(ctx, &a_l, &b_l)?;
    let zm0 = &shift_up(&zh.z0, half) + &low.z0;
    let zm1 = &shift_up(&zh.z1, half) + &low.z1;
    if deg_lt(&zm1, half) {
        return Ok((PolyVec2 { z0: zm0, z1: zm1 }, mh));
    }

    let (q, rm) = divrem(ctx, &zm0, &zm1)?;
    let step = mh.euclid_step(ctx, &q)?;
    if g == 1 {
        return Ok((PolyVec2 { z0: zm1, z1: rm }, step));
    }

    let (z_ll, z_lh, z_h) = split3(&zm1, g);
    let (r_ll, r_lh, r_h) = split3(&rm, g);
    let z_mid = mid_form(ctx, &z_lh, &z_h, g)?;
    let r_mid = mid_form(ctx, &r_lh, &r_h, g)?;
    let (ym, mm) = hgcd(ctx, &z_mid, &r_mid, g - 1)?;

    let m_r = mm.mul(ctx, &step)?;
    let tail = mm.apply(ctx, &z_ll, &r_ll)?;
    let j = (g - 2) as usize;
    let z_r = PolyVec2 {
        z0: &mul_subspace(ctx, &ym.z0, j)? + &tail.z0,
        z1: &mul_subspace(ctx, &ym.z1, j)? + &tail.z1,
    };
    Ok((z_r, m_r))
}

fn shift_up(p: &PolyX, by: usize) -> PolyX {
    if p.is_zero() {
        return PolyX::zero();
    }
    let mut c = vec![0; by];
    c.extend_from_slice(p.coeffs());
    PolyX::from_coeffs(c)
}

/// Solves `z = lambda * s + q * s_t` with `deg z < 2^(t-1)` and
/// `deg lambda <= 2^(t-1)` for a nonzero syndrome `s` of degree `< 2^t`.
///
/// Returns `(lambda, q)`. The low-degree remainder is the `z1` output of
/// [`hgcd`].
pub fn solve_key_equation(ctx: &BasisCtx, s: &PolyX, t: u32) -> Result<(PolyX, PolyX)> {
    let ds = s.degree().ok_or(Error::DivisionByZero)?;
    let tt = 1usize << t;
    if ds >= tt {
        return Err(Error::PolyTooLong { degree: ds, len: tt });
    }
    if ds < tt / 2 {
        // (1, 0) already solves the equation; no error pattern within capacity
        // produces such a syndrome.
        return Ok((PolyX::constant(1), PolyX::zero()));
    }
    let (qt, rt) = divrem(ctx, &PolyX::basis_elem(tt), s)?;
    if rt.is_zero() {
        return Ok((qt, PolyX::constant(1)));
    }
    let (_, m) = hgcd(ctx, s, &rt, t)?;
    // z1 = m10 s + m11 (s_t + q_t s)
    let lambda = &m.m10 + &mul(ctx, &m.m11, &qt)?;
    Ok((lambda, m.m11))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case_is_identity() {
        let ctx = BasisCtx::with_dimension(8).unwrap();
        let a = PolyX::from_slice(&[1, 2, 3, 4, 5, 6, 7]);
        let b = PolyX::from_slice(&[9, 9, 9]);
        let (z, m) = hgcd(&ctx, &a, &b, 3).unwrap();
        assert_eq!(z, PolyVec2 { z0: a, z1: b });
        assert_eq!(m, PolyMat2::identity());
    }

    #[test]
    fn precondition_errors() {
        let ctx = BasisCtx::with_dimension(8).unwrap();
        let a = PolyX::from_slice(&[1, 2]);
        let b = PolyX::from_slice(&[1, 2, 3]);
        assert!(matches!(hgcd(&ctx, &a, &b, 2), Err(Error::HgcdPrecondition(_))));
        assert!(matches!(hgcd(&ctx, &b, &a, 1), Err(Error::HgcdPrecondition(_))));
    }

    #[test]
    fn split3_slices() {
        let a = PolyX::from_slice(&[1, 2, 3]);
        assert_eq!(split3(&a, 4), (a.clone(), PolyX::zero(), PolyX::zero()));
        let top = PolyX::basis_elem(8);
        assert_eq!(
            split3(&top, 4),
            (PolyX::zero(), PolyX::zero(), PolyX::constant(1))
        );
    }

    #[test]
    fn small_hgcd_satisfies_conditions() {
        let ctx = BasisCtx::with_dimension(6).unwrap();
        let a = PolyX::from_slice(&[3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 11]);
        let b = PolyX::from_slice(&[2, 7, 1, 8, 2, 8, 1, 8, 2, 8, 4, 5, 9, 0, 4]);
        let (z, m) = hgcd(&ctx, &a, &b, 4).unwrap();
        assert_eq!(m.apply(&ctx, &a, &b).unwrap(), z);
        assert!(z.z0.degree().unwrap() >= 8);
        assert!(deg_lt(&z.z1, 8));
    }
}
