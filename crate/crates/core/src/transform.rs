//! Multipoint evaluation of polynomials in the `X̄` / `X` bases on a coset
//! `{omega_i + beta : i < 2^k}` and the matching interpolation, both in
//! `O(h lg h)` field operations.
//!
//! The transforms run in place, level by level. At level `j` the buffer is
//! cut into blocks of `2^(j+1)` entries; the block starting at `base` holds a
//! polynomial to be evaluated on `omega_base + beta + V_(j+1)`, and its
//! butterfly constant is `s_j(omega_base + beta) / s_j(v_j)`. By linearity of
//! `s_j` that is `twiddle_j[base] + s_j(beta) / s_j(v_j)`.

use crate::basis::{BasisCtx, PolyX, PolyXbar};
use crate::error::{Error, Result};
use crate::field::FieldElem;

/// Values of a polynomial at `omega_i + beta` for `i < 2^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalVec {
    values: Vec<FieldElem>,
    k: u32,
    beta: FieldElem,
}

impl EvalVec {
    /// Wraps `values` (length must be a power of two) as evaluations on the
    /// coset shifted by `beta`.
    pub fn new(values: Vec<FieldElem>, beta: FieldElem) -> Result<Self> {
        let k = log2_exact(values.len())?;
        Ok(Self { values, k, beta })
    }

    #[inline]
    pub fn values(&self) -> &[FieldElem] {
        &self.values
    }

    pub fn into_values(self) -> Vec<FieldElem> {
        self.values
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn beta(&self) -> FieldElem {
        self.beta
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Counters filled in by the instrumented transform entry points.
///
/// Additions and multiplications count butterfly work only; the `p_i`
/// scalings of the `X`-basis wrappers are not included.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpTally {
    pub additions: u64,
    pub multiplications: u64,
    pub forward_calls: u64,
    pub inverse_calls: u64,
}

impl OpTally {
    fn block(&mut self, half: usize, twiddle_zero: bool) {
        let half = half as u64;
        if twiddle_zero {
            self.additions += half;
        } else {
            self.additions += 2 * half;
            self.multiplications += half;
        }
    }
}

impl std::ops::AddAssign for OpTally {
    fn add_assign(&mut self, o: Self) {
        self.additions += o.additions;
        self.multiplications += o.multiplications;
        self.forward_calls += o.forward_calls;
        self.inverse_calls += o.inverse_calls;
    }
}

pub(crate) fn log2_exact(len: usize) -> Result<u32> {
    if len.is_power_of_two() {
        Ok(len.trailing_zeros())
    } else {
        Err(Error::NotPowerOfTwo(len))
    }
}

fn check_size(ctx: &BasisCtx, len: usize) -> Result<u32> {
    let k = log2_exact(len)?;
    if k > ctx.m() {
        return Err(Error::TransformTooLarge { k, m: ctx.m() });
    }
    Ok(k)
}

// s_j(beta) / s_j(v_j) for j < k.
fn beta_consts(ctx: &BasisCtx, k: u32, beta: FieldElem) -> Vec<FieldElem> {
    let f = ctx.field();
    let mut out = Vec::with_capacity(k as usize);
    let mut y = beta;
    for j in 0..k as usize {
        out.push(f.mul(y, ctx.level_const_inv(j)));
        y = f.square(y) ^ f.mul(ctx.level_const(j), y);
    }
    out
}

/// In-place `X̄`-basis evaluation: on return `buf[i]` is the value at
/// `omega_i + beta`. `buf.len()` must be `2^k` with `k <= m`.
pub fn fft_xbar_in_place(
    ctx: &BasisCtx,
    buf: &mut [FieldElem],
    beta: FieldElem,
    mut tally: Option<&mut OpTally>,
) -> Result<()> {
    let k = check_size(ctx, buf.len())?;
    let f = ctx.field();
    let bc = beta_consts(ctx, k, beta);
    for j in (0..k as usize).rev() {
        let half = 1usize << j;
        let w = ctx.twiddles(j);
        for base in (0..buf.len()).step_by(2 * half) {
            let tw = w[base] ^ bc[j];
            let (lo, hi) = buf[base..base + 2 * half].split_at_mut(half);
            if tw == 0 {
                for (x, y) in lo.iter().zip(hi.iter_mut()) {
                    *y ^= *x;
                }
            } else {
                let lt = f.log(tw);
                for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                    *x ^= f.mul_by_log(*y, lt);
                    *y ^= *x;
                }
            }
            if let Some(t) = tally.as_deref_mut() {
                t.block(half, tw == 0);
            }
        }
    }
    if let Some(t) = tally {
        t.forward_calls += 1;
    }
    Ok(())
}

/// Inverse of [`fft_xbar_in_place`] for the same `beta`.
pub fn ifft_xbar_in_place(
    ctx: &BasisCtx,
    buf: &mut [FieldElem],
    beta: FieldElem,
    mut tally: Option<&mut OpTally>,
) -> Result<()> {
    let k = check_size(ctx, buf.len())?;
    let f = ctx.field();
    let bc = beta_consts(ctx, k, beta);
    for (j, &cj) in bc.iter().enumerate() {
        let half = 1usize << j;
        let w = ctx.twiddles(j);
        for base in (0..buf.len()).step_by(2 * half) {
            let tw = w[base] ^ cj;
            let (lo, hi) = buf[base..base + 2 * half].split_at_mut(half);
            if tw == 0 {
                for (x, y) in lo.iter().zip(hi.iter_mut()) {
                    *y ^= *x;
                }
            } else {
                let lt = f.log(tw);
                for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                    *y ^= *x;
                    *x ^= f.mul_by_log(*y, lt);
                }
            }
            if let Some(t) = tally.as_deref_mut() {
                t.block(half, tw == 0);
            }
        }
    }
    if let Some(t) = tally {
        t.inverse_calls += 1;
    }
    Ok(())
}

/// `X`-basis evaluation in place: scales by `p_i`, then runs the `X̄` transform.
pub fn fft_x_in_place(
    ctx: &BasisCtx,
    buf: &mut [FieldElem],
    beta: FieldElem,
    tally: Option<&mut OpTally>,
) -> Result<()> {
    check_size(ctx, buf.len())?;
    scale(ctx, buf, ctx.norm_table());
    fft_xbar_in_place(ctx, buf, beta, tally)
}

/// Inverse of [`fft_x_in_place`].
pub fn ifft_x_in_place(
    ctx: &BasisCtx,
    buf: &mut [FieldElem],
    beta: FieldElem,
    tally: Option<&mut OpTally>,
) -> Result<()> {
    ifft_xbar_in_place(ctx, buf, beta, tally)?;
    scale(ctx, buf, ctx.norm_inv_table());
    Ok(())
}

fn scale(ctx: &BasisCtx, buf: &mut [FieldElem], by: &[FieldElem]) {
    let f = ctx.field();
    for (c, &s) in buf.iter_mut().zip(by) {
        *c = f.mul(*c, s);
    }
}

/// Evaluates `d` on the coset `omega_i + beta`, `i < 2^k`.
pub fn fft_xbar(ctx: &BasisCtx, d: &PolyXbar, k: u32, beta: FieldElem) -> Result<EvalVec> {
    let mut buf = padded_for(ctx, d.coeffs(), k)?;
    fft_xbar_in_place(ctx, &mut buf, beta, None)?;
    Ok(EvalVec { values: buf, k, beta })
}

/// Interpolates the unique `X̄`-basis polynomial of degree `< 2^k` through `e`.
pub fn ifft_xbar(ctx: &BasisCtx, e: &EvalVec) -> Result<PolyXbar> {
    let mut buf = e.values.clone();
    ifft_xbar_in_place(ctx, &mut buf, e.beta, None)?;
    Ok(PolyXbar::from_coeffs(buf))
}

pub fn fft_x(ctx: &BasisCtx, d: &PolyX, k: u32, beta: FieldElem) -> Result<EvalVec> {
    let mut buf = padded_for(ctx, d.coeffs(), k)?;
    fft_x_in_place(ctx, &mut buf, beta, None)?;
    Ok(EvalVec { values: buf, k, beta })
}

pub fn ifft_x(ctx: &BasisCtx, e: &EvalVec) -> Result<PolyX> {
    let mut buf = e.values.clone();
    ifft_x_in_place(ctx, &mut buf, e.beta, None)?;
    Ok(PolyX::from_coeffs(buf))
}

fn padded_for(ctx: &BasisCtx, coeffs: &[FieldElem], k: u32) -> Result<Vec<FieldElem>> {
    if k > ctx.m() {
        return Err(Error::TransformTooLarge { k, m: ctx.m() });
    }
    let len = 1usize << k;
    if coeffs.len() > len {
        return Err(Error::PolyTooLong { degree: coeffs.len() - 1, len });
    }
    let mut buf = coeffs.to_vec();
    buf.resize(len, 0);
    Ok(buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn gf4() -> BasisCtx {
        BasisCtx::new(FieldCtx::new(2, 0b111).unwrap(), vec![1, 2]).unwrap()
    }

    #[test]
    fn gf4_hand_trace() {
        let ctx = gf4();
        let d = PolyXbar::from_slice(&[0, 1, 0, 0]);
        let e = fft_xbar(&ctx, &d, 2, 0).unwrap();
        assert_eq!(e.values(), &[0, 1, 2, 3]);
        let back = ifft_xbar(&ctx, &EvalVec::new(vec![0, 1, 2, 3], 0).unwrap()).unwrap();
        assert_eq!(back.coeffs(), &[0, 1]);
        assert_eq!(fft_x(&ctx, &PolyX::from_slice(&[0, 1]), 2, 0).unwrap(), e);
    }

    #[test]
    fn constant_is_flat() {
        let ctx = BasisCtx::with_dimension(8).unwrap();
        let e = fft_xbar(&ctx, &PolyXbar::constant(77), 5, 13).unwrap();
        assert!(e.values().iter().all(|&v| v == 77));
        assert!(ifft_xbar(&ctx, &EvalVec::new(vec![0; 8], 3).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn subspace_poly_zeros() {
        let ctx = BasisCtx::with_dimension(6).unwrap();
        for j in 0..6 {
            let e = fft_x(&ctx, &PolyX::basis_elem(1 << j), 6, 0).unwrap();
            for (i, &v) in e.values().iter().enumerate() {
                assert_eq!(v, ctx.subspace_eval(j, ctx.omega(i)));
                assert_eq!(v == 0, i < (1 << j));
            }
        }
    }

    #[test]
    fn size_errors() {
        let ctx = BasisCtx::with_dimension(3).unwrap();
        let mut buf = vec![0; 16];
        assert_eq!(
            fft_xbar_in_place(&ctx, &mut buf, 0, None),
            Err(Error::TransformTooLarge { k: 4, m: 3 })
        );
        let mut buf = vec![0; 6];
        assert_eq!(ifft_x_in_place(&ctx, &mut buf, 0, None), Err(Error::NotPowerOfTwo(6)));
        assert!(fft_x(&ctx, &PolyX::basis_elem(4), 2, 0).is_err());
    }

    #[test]
    fn op_counts_without_skips() {
        let ctx = BasisCtx::with_dimension(12).unwrap();
        // Any beta outside V_10 keeps every butterfly constant nonzero.
        let beta = 1 << 11;
        let mut buf = vec![1; 1024];
        let mut t = OpTally::default();
        fft_xbar_in_place(&ctx, &mut buf, beta, Some(&mut t)).unwrap();
        assert_eq!((t.additions, t.multiplications), (10240, 5120));
        let mut t0 = OpTally::default();
        fft_xbar_in_place(&ctx, &mut buf, 0, Some(&mut t0)).unwrap();
        assert!(t0.additions < 10240 && t0.multiplications < 5120);
        assert_eq!(t0.forward_calls, 1);
    }
}
