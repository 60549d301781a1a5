//! Arithmetic in GF(2^m) for 2 <= m <= 16.
//!
//! Elements are plain `u16` bit patterns: bit `i` is the coefficient of `y^i`
//! in the polynomial representation modulo the field's reduction polynomial.
//! Multiplication goes through discrete log/exp tables built once per field.

use crate::error::{Error, Result};

/// An element of GF(2^m), stored as its bit pattern (`value < 2^m`).
pub type FieldElem = u16;

pub const MIN_DIMENSION: u32 = 2;
pub const MAX_DIMENSION: u32 = 16;

/// Default reduction polynomials, indexed by `m`, including the `y^m` term.
const DEFAULT_POLYS: [u32; 17] = [
    0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// Default reduction polynomial for GF(2^m), or `None` if `m` is unsupported.
pub fn default_poly(m: u32) -> Option<u32> {
    (MIN_DIMENSION..=MAX_DIMENSION)
        .contains(&m)
        .then(|| DEFAULT_POLYS[m as usize])
}

/// Addition (and subtraction) in characteristic 2.
#[inline(always)]
pub fn add(a: FieldElem, b: FieldElem) -> FieldElem {
    a ^ b
}

/// Multiplication and inversion machinery for one field.
///
/// Immutable after construction; share it freely across threads.
#[derive(Clone)]
pub struct FieldCtx {
    m: u32,
    poly: u32,
    order: usize,
    log: Vec<u16>,
    // Two periods so that `exp[log a + log b]` never needs a modular reduction.
    exp: Vec<u16>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("m", &self.m)
            .field("poly", &format_args!("{:#x}", self.poly))
            .finish()
    }
}

impl FieldCtx {
    /// Builds the log/exp tables for GF(2)[y] / (`poly`), where `poly` has degree `m`.
    ///
    /// Fails unless `poly` is irreducible. The final check walks the powers of a
    /// primitive element and requires them to visit all `2^m - 1` nonzero values.
    pub fn new(m: u32, poly: u32) -> Result<Self> {
        if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&m) {
            return Err(Error::UnsupportedDimension(m));
        }
        let reducible = Error::ReducibleModulus { m, poly };
        if poly >> m != 1 || !is_irreducible(poly as u64, m) {
            return Err(reducible);
        }
        let order = (1usize << m) - 1;
        let generator = find_primitive(poly as u64, m).ok_or(reducible.clone())?;

        let mut log = vec![0u16; order + 1];
        let mut exp = vec![0u16; 2 * order];
        let mut seen = vec![false; order + 1];
        let mut x = 1u64;
        for i in 0..order {
            if seen[x as usize] {
                return Err(reducible);
            }
            seen[x as usize] = true;
            exp[i] = x as u16;
            exp[i + order] = x as u16;
            log[x as usize] = i as u16;
            x = clmul_mod(x, generator, poly as u64, m);
        }
        if x != 1 {
            return Err(reducible);
        }
        Ok(Self { m, poly, order, log, exp })
    }

    /// GF(2^m) with the built-in reduction polynomial for `m`.
    pub fn with_default_poly(m: u32) -> Result<Self> {
        let poly = default_poly(m).ok_or(Error::UnsupportedDimension(m))?;
        Self::new(m, poly)
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of field elements, `2^m`.
    #[inline]
    pub fn size(&self) -> usize {
        self.order + 1
    }

    /// Order of the multiplicative group, `2^m - 1`.
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> u32 {
        self.poly
    }

    #[inline]
    pub fn contains(&self, a: FieldElem) -> bool {
        (a as usize) <= self.order
    }

    #[inline(always)]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    /// `a * g^log_b` for a precomputed discrete log of the second factor.
    #[inline(always)]
    pub fn mul_by_log(&self, a: FieldElem, log_b: usize) -> FieldElem {
        if a == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + log_b]
        }
    }

    /// Discrete logarithm of a nonzero element.
    #[inline(always)]
    pub fn log(&self, a: FieldElem) -> usize {
        debug_assert!(a != 0, "log of zero");
        self.log[a as usize] as usize
    }

    #[inline(always)]
    pub fn exp(&self, i: usize) -> FieldElem {
        self.exp[i % self.order]
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.exp[(self.order - self.log[a as usize] as usize) % self.order])
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        if b == 0 {
            return Err(Error::DivisionByZero);
        }
        if a == 0 {
            return Ok(0);
        }
        let la = self.log[a as usize] as usize;
        let lb = self.log[b as usize] as usize;
        Ok(self.exp[la + self.order - lb])
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (e % self.order as u64)) % self.order as u64;
        self.exp[l as usize]
    }

    #[inline]
    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }
}

/// Carryless product of `a` and `b` reduced modulo `poly` (degree `m`).
pub(crate) fn clmul_mod(a: u64, b: u64, poly: u64, m: u32) -> u64 {
    let mut prod = 0u64;
    for i in 0..m {
        if (b >> i) & 1 == 1 {
            prod ^= a << i;
        }
    }
    for i in (m..2 * m).rev() {
        if (prod >> i) & 1 == 1 {
            prod ^= poly << (i - m);
        }
    }
    prod
}

fn gf2_poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        while a != 0 && 63 - a.leading_zeros() >= 63 - b.leading_zeros() {
            a ^= b << ((63 - a.leading_zeros()) - (63 - b.leading_zeros()));
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Ben-Or test: `poly` of degree `m` is irreducible iff gcd(poly, y^(2^i) - y) = 1
/// for every `1 <= i <= m/2`.
fn is_irreducible(poly: u64, m: u32) -> bool {
    if poly & 1 == 0 {
        return false;
    }
    let mut y_pow = 2u64; // y^(2^0)
    for _ in 1..=m / 2 {
        y_pow = clmul_mod(y_pow, y_pow, poly, m);
        if gf2_poly_gcd(poly, y_pow ^ 2) != 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(base: u64, mut e: u64, poly: u64, m: u32) -> u64 {
    let mut acc = 1u64;
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = clmul_mod(acc, b, poly, m);
        }
        b = clmul_mod(b, b, poly, m);
        e >>= 1;
    }
    acc
}

/// Smallest element whose multiplicative order is `2^m - 1`.
fn find_primitive(poly: u64, m: u32) -> Option<u64> {
    let order = (1u64 << m) - 1;
    let factors = prime_factors(order);
    (2..=order).find(|&g| factors.iter().all(|&p| pow_mod(g, order / p, poly, m) != 1))
}
