//! Arithmetic on polynomials in the monic basis `X`: FFT multiplication,
//! multiplication by a single `s_j`, formal derivative, and Newton-iteration
//! division with remainder.

use std::collections::BTreeMap;

use crate::basis::{BasisCtx, PolyX};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::transform::{fft_x_in_place, ifft_x_in_place};

/// `Q(a, i)`: drops coefficients below `2^i` and shifts the rest down by `2^i`.
///
/// For `l < 2^i`, `X_(l + 2^i) = s_i * X_l`, so this is the exact quotient of
/// `a` by `s_i` whenever `deg a < 2^(i+1)`.
pub fn shift_quotient(a: &PolyX, i: u32) -> PolyX {
    let off = 1usize << i;
    if a.len() <= off {
        return PolyX::zero();
    }
    PolyX::from_slice(&a.coeffs()[off..])
}

/// Multiplies `a` by the subspace polynomial `s_j` in linear time.
///
/// Uses `s_j * X_l = X_(l + 2^j)` when bit `j` of `l` is clear, and otherwise
/// `s_j^2 = s_(j+1) + c_j s_j` to carry into the next level.
pub fn mul_subspace(ctx: &BasisCtx, a: &PolyX, j: usize) -> Result<PolyX> {
    if a.is_zero() {
        return Ok(PolyX::zero());
    }
    let f = ctx.field();
    // s_j * X_l has degree l + 2^j
    let mut out = vec![0 as FieldElem; a.len() + (1 << j)];
    for (l, &c) in a.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (mut idx, mut lvl) = (l, j);
        while idx >> lvl & 1 == 1 {
            if lvl >= ctx.levels() {
                return Err(Error::ProductTooLarge {
                    degree: a.len() - 1 + (1 << j),
                    bound: max_product_degree(ctx),
                });
            }
            out[idx] ^= f.mul(ctx.level_const(lvl), c);
            idx -= 1 << lvl;
            lvl += 1;
        }
        out[idx + (1 << lvl)] ^= c;
    }
    Ok(PolyX::from_coeffs(out))
}

/// Product bound: degrees up to `2^levels - 1` are representable.
pub fn max_product_degree(ctx: &BasisCtx) -> usize {
    (1usize << ctx.levels()) - 1
}

/// Exact product `a * b`.
///
/// Products of degree below `2^m` take one pair of transforms of the smallest
/// sufficient size. Larger products (which arise only inside division) are
/// cut into blocks of `2^(m-1)` coefficients, multiplied blockwise at size
/// `2^m`, and recombined through the `s_j` product rules.
pub fn mul(ctx: &BasisCtx, a: &PolyX, b: &PolyX) -> Result<PolyX> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Ok(PolyX::zero());
    };
    if da == 0 || db == 0 {
        let (c, p) = if da == 0 { (a.coeff(0), b) } else { (b.coeff(0), a) };
        let f = ctx.field();
        return Ok(p.map_coeffs(|_, x| f.mul(x, c)));
    }
    let d = da + db;
    if d >> ctx.m() == 0 {
        let k = usize::BITS - d.leading_zeros();
        return Ok(PolyX::from_coeffs(mul_small(ctx, a.coeffs(), b.coeffs(), k)?));
    }
    let bound = max_product_degree(ctx);
    if d > bound {
        return Err(Error::ProductTooLarge { degree: d, bound });
    }
    mul_wide(ctx, a, b)
}

fn mul_small(ctx: &BasisCtx, a: &[FieldElem], b: &[FieldElem], k: u32) -> Result<Vec<FieldElem>> {
    let n = 1usize << k;
    let mut fa = a.to_vec();
    fa.resize(n, 0);
    let mut fb = b.to_vec();
    fb.resize(n, 0);
    fft_x_in_place(ctx, &mut fa, 0, None)?;
    fft_x_in_place(ctx, &mut fb, 0, None)?;
    let f = ctx.field();
    for (x, &y) in fa.iter_mut().zip(&fb) {
        *x = f.mul(*x, y);
    }
    ifft_x_in_place(ctx, &mut fa, 0, None)?;
    Ok(fa)
}

fn mul_wide(ctx: &BasisCtx, a: &PolyX, b: &PolyX) -> Result<PolyX> {
    let m = ctx.m() as usize;
    let lo = m - 1;
    let h = 1usize << lo;
    let n = 1usize << m;
    let f = ctx.field();

    let blocks = |p: &PolyX| -> Result<Vec<Option<Vec<FieldElem>>>> {
        p.coeffs()
            .chunks(h)
            .map(|c| {
                if c.iter().all(|&x| x == 0) {
                    return Ok(None);
                }
                let mut buf = c.to_vec();
                buf.resize(n, 0);
                fft_x_in_place(ctx, &mut buf, 0, None)?;
                Ok(Some(buf))
            })
            .collect()
    };
    let ta = blocks(a)?;
    let tb = blocks(b)?;

    // Accumulate every block product in the evaluation domain, grouped by the
    // S_z it multiplies, where S_z is the product of s_(lo+i) over bits i of z.
    let mut acc: BTreeMap<usize, Vec<FieldElem>> = BTreeMap::new();
    for (u, au) in ta.iter().enumerate() {
        let Some(au) = au else { continue };
        for (w, bw) in tb.iter().enumerate() {
            let Some(bw) = bw else { continue };
            for (z, g) in block_product(ctx, lo, u, w) {
                let lg = f.log(g);
                let e = acc.entry(z).or_insert_with(|| vec![0; n]);
                for ((o, &x), &y) in e.iter_mut().zip(au).zip(bw) {
                    *o ^= f.mul_by_log(f.mul(x, y), lg);
                }
            }
        }
    }

    let mut out = PolyX::zero();
    for (z, mut e) in acc {
        ifft_x_in_place(ctx, &mut e, 0, None)?;
        let mut p = PolyX::from_coeffs(e);
        for bit in 0..usize::BITS as usize {
            if z >> bit & 1 == 1 {
                p = mul_subspace(ctx, &p, lo + bit)?;
            }
        }
        out += &p;
    }
    Ok(out)
}

// S_u * S_w expanded as sum of gamma * S_z, with S_z as in `mul_wide`.
fn block_product(ctx: &BasisCtx, lo: usize, u: usize, w: usize) -> Vec<(usize, FieldElem)> {
    let mut terms: BTreeMap<usize, FieldElem> = BTreeMap::new();
    terms.insert(u, 1);
    for bit in 0..usize::BITS as usize {
        if w >> bit & 1 == 0 {
            continue;
        }
        let mut next = BTreeMap::new();
        for (&z, &g) in &terms {
            times_level(ctx, lo, z, bit, g, &mut next);
        }
        terms = next;
    }
    terms.into_iter().filter(|&(_, g)| g != 0).collect()
}

fn times_level(
    ctx: &BasisCtx,
    lo: usize,
    z: usize,
    bit: usize,
    g: FieldElem,
    out: &mut BTreeMap<usize, FieldElem>,
) {
    if z >> bit & 1 == 0 {
        *out.entry(z | 1 << bit).or_insert(0) ^= g;
        return;
    }
    let c = ctx.level_const(lo + bit);
    *out.entry(z).or_insert(0) ^= ctx.field().mul(c, g);
    times_level(ctx, lo, z & !(1 << bit), bit + 1, g, out);
}

/// Formal derivative, computed blockwise from
/// `(D0 + s_(k-1) D1)' = D0' + s'_(k-1) D1 + s_(k-1) D1'`.
pub fn formal_derivative(ctx: &BasisCtx, d: &PolyX) -> PolyX {
    if d.is_zero() {
        return PolyX::zero();
    }
    let n = d.len().next_power_of_two();
    let mut buf = d.coeffs().to_vec();
    buf.resize(n, 0);
    derive_in_place(ctx, &mut buf);
    PolyX::from_coeffs(buf)
}

fn derive_in_place(ctx: &BasisCtx, c: &mut [FieldElem]) {
    if c.len() == 1 {
        c[0] = 0;
        return;
    }
    let half = c.len() / 2;
    let k = half.trailing_zeros() as usize + 1;
    let sd = ctx.subspace_derivative(k - 1);
    let f = ctx.field();
    let (lo, hi) = c.split_at_mut(half);
    derive_in_place(ctx, lo);
    for (x, &y) in lo.iter_mut().zip(hi.iter()) {
        *x ^= f.mul(sd, y);
    }
    derive_in_place(ctx, hi);
}

/// `Λ` with `Λ * s_1 * B = s_(D+1) + H`, `deg H <= 2^D`, for `deg B = 2^D - 1`.
pub fn newton_lambda(ctx: &BasisCtx, b: &PolyX) -> Result<PolyX> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    if !(db + 1).is_power_of_two() {
        return Err(Error::NotMersenneDegree(db));
    }
    let dl = (db + 1).trailing_zeros();
    let f = ctx.field();
    let mut lambda = PolyX::constant(f.inv(b.lead().unwrap_or(0))?);

    // B_i = Q(B_(i+1), i), from i = D - 1 down to 1
    let mut bs = vec![b.clone()];
    for i in (1..dl).rev() {
        let next = shift_quotient(bs.last().unwrap(), i);
        bs.push(next);
    }
    bs.reverse();

    for i in 1..=dl {
        let bi = &bs[i as usize - 1];
        let sq = mul(ctx, &lambda, &lambda)?;
        let bar = mul_subspace(ctx, &mul(ctx, &sq, bi)?, 1)?;
        let l1 = shift_quotient(&bar, i);
        let c = ctx.level_const(i as usize - 1);
        let tail = shift_quotient(&l1, i - 1).map_coeffs(|_, x| f.mul(x, c));
        lambda = &l1 + &tail;
    }

    if cfg!(debug_assertions) {
        let lhs = mul_subspace(ctx, &mul(ctx, &lambda, b)?, 1)?;
        let resid = &lhs + &PolyX::basis_elem(1 << (dl + 1));
        debug_assert!(
            resid.degree().map_or(true, |d| d <= 1 << dl),
            "newton_lambda residual too large"
        );
    }
    Ok(lambda)
}

/// Division with remainder: returns `(q, r)` with `a = q b + r`, `deg r < deg b`.
pub fn divrem(ctx: &BasisCtx, a: &PolyX, b: &PolyX) -> Result<(PolyX, PolyX)> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let f = ctx.field();
    let Some(da) = a.degree() else {
        return Ok((PolyX::zero(), PolyX::zero()));
    };
    if da < db {
        return Ok((PolyX::zero(), a.clone()));
    }
    let lb = b.lead().unwrap_or(0);
    if db == 0 {
        let inv = f.inv(lb)?;
        return Ok((a.map_coeffs(|_, x| f.mul(x, inv)), PolyX::zero()));
    }
    if da == db {
        let c = f.div(a.lead().unwrap_or(0), lb)?;
        let r = a + &b.map_coeffs(|_, x| f.mul(x, c));
        return Ok((PolyX::constant(c), r));
    }

    let d_ell = usize::BITS - da.leading_zeros();
    let y = (1usize << d_ell) - db - 1;
    let big_a = mul_by_basis_elem(ctx, a, y)?;
    let big_b = mul_by_basis_elem(ctx, b, y)?;
    let lambda = newton_lambda(ctx, &big_b)?;
    let d_a = d_ell + 1;
    debug_assert!(
        big_a.degree().is_some_and(|d| d < 1 << d_a && d >= 1 << d_ell),
        "D_a != D_ell + 1"
    );

    let prod = mul_subspace(ctx, &mul(ctx, &big_a, &lambda)?, 1)?;
    let q = shift_quotient(&prod, d_a);
    let r = a + &mul(ctx, &q, b)?;
    debug_assert!(r.degree().map_or(true, |d| d < db), "remainder degree too high");
    Ok((q, r))
}

/// `p * X_y`, with a shift when `y` shares no bits with any index of `p`.
fn mul_by_basis_elem(ctx: &BasisCtx, p: &PolyX, y: usize) -> Result<PolyX> {
    if y == 0 {
        return Ok(p.clone());
    }
    let disjoint = p
        .coeffs()
        .iter()
        .enumerate()
        .all(|(l, &c)| c == 0 || l & y == 0);
    if disjoint {
        let mut out = vec![0; p.len() + y];
        for (l, &c) in p.coeffs().iter().enumerate() {
            if c != 0 {
                out[l | y] = c;
            }
        }
        return Ok(PolyX::from_coeffs(out));
    }
    mul(ctx, p, &PolyX::basis_elem(y))
}
