//! Systematic Reed-Solomon codes of length `n = 2^m` with `T = 2^t` parity
//! symbols.
//!
//! A codeword is the evaluation of a message polynomial of degree `< k` on all
//! of GF(2^m), position `i` holding the value at `omega_i`. The word is cut
//! into `n / T` blocks of `T` symbols: block 0 carries the parity and message
//! symbol `j` sits at position `T + j`.
//!
//! Decoding follows the syndrome / key equation / root search / error value
//! pipeline, each stage built on `T`-point transforms.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basis::{BasisCtx, PolyX};
use crate::error::{DecodeFailure, Error, Result};
use crate::field::FieldElem;
use crate::halfgcd::solve_key_equation;
use crate::poly_ops::formal_derivative;
use crate::transform::{fft_xbar_in_place, ifft_xbar_in_place, OpTally};

/// Code dimensions: `n = 2^m`, `T = 2^t = n - k`, `1 <= t <= m - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeParams {
    m: u32,
    t: u32,
}

impl CodeParams {
    pub fn new(m: u32, t: u32) -> Result<Self> {
        if !(crate::field::MIN_DIMENSION..=crate::field::MAX_DIMENSION).contains(&m) {
            return Err(Error::UnsupportedDimension(m));
        }
        if t == 0 || t >= m {
            return Err(Error::InvalidParams { m, t });
        }
        Ok(Self { m, t })
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn t(&self) -> u32 {
        self.t
    }

    /// Codeword length `2^m`.
    #[inline]
    pub fn n(&self) -> usize {
        1 << self.m
    }

    /// Message length `n - T`.
    #[inline]
    pub fn k(&self) -> usize {
        self.n() - self.parity_len()
    }

    /// Number of parity symbols `T = 2^t`.
    #[inline]
    pub fn parity_len(&self) -> usize {
        1 << self.t
    }

    /// Correctable errors per codeword, `T / 2`.
    #[inline]
    pub fn capacity(&self) -> usize {
        self.parity_len() / 2
    }

    /// Number of `T`-symbol blocks in a codeword.
    #[inline]
    pub fn blocks(&self) -> usize {
        self.n() >> self.t
    }
}

/// `n` symbols; block 0 is parity, the rest is the message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    symbols: Vec<FieldElem>,
    parity_len: usize,
}

impl Codeword {
    pub fn symbols(&self) -> &[FieldElem] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<FieldElem> {
        self.symbols
    }

    pub fn parity(&self) -> &[FieldElem] {
        &self.symbols[..self.parity_len]
    }

    pub fn message(&self) -> &[FieldElem] {
        &self.symbols[self.parity_len..]
    }

    /// Block `i`, symbols `[iT, (i+1)T)`.
    pub fn block(&self, i: usize) -> &[FieldElem] {
        &self.symbols[i * self.parity_len..(i + 1) * self.parity_len]
    }
}

/// Outcome of a successful decode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub corrected: Codeword,
    /// Sorted error positions.
    pub error_positions: Vec<usize>,
    /// Error value per position; XOR-ing it into the received symbol corrects it.
    pub error_values: BTreeMap<usize, FieldElem>,
}

impl DecodeResult {
    pub fn error_count(&self) -> usize {
        self.error_positions.len()
    }
}

/// Encoder/decoder for one parameter set. Cheap to clone and share.
#[derive(Clone, Debug)]
pub struct RsCodec {
    ctx: Arc<BasisCtx>,
    params: CodeParams,
}

impl RsCodec {
    /// Codec over GF(2^m) with the default modulus and unit basis.
    pub fn new(params: CodeParams) -> Result<Self> {
        let ctx = Arc::new(BasisCtx::with_dimension(params.m())?);
        Ok(Self { ctx, params })
    }

    pub fn with_basis(ctx: Arc<BasisCtx>, params: CodeParams) -> Result<Self> {
        if ctx.m() != params.m() {
            return Err(Error::InvalidParams { m: ctx.m(), t: params.t() });
        }
        Ok(Self { ctx, params })
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn basis(&self) -> &Arc<BasisCtx> {
        &self.ctx
    }

    fn check_symbols(&self, s: &[FieldElem], expected: usize) -> Result<()> {
        if s.len() != expected {
            return Err(Error::LengthMismatch { expected, got: s.len() });
        }
        let f = self.ctx.field();
        if let Some(index) = s.iter().position(|&x| !f.contains(x)) {
            return Err(Error::SymbolOutOfRange { index, value: s[index], m: f.m() });
        }
        Ok(())
    }

    // omega of the first position of block i
    fn block_shift(&self, i: usize) -> FieldElem {
        self.ctx.omega(i * self.params.parity_len())
    }

    /// Systematic encoding of `k` message symbols.
    pub fn encode(&self, msg: &[FieldElem]) -> Result<Codeword> {
        self.encode_inner(msg, None)
    }

    /// As [`encode`](Self::encode), also recording transform work in `tally`.
    pub fn encode_with_tally(&self, msg: &[FieldElem], tally: &mut OpTally) -> Result<Codeword> {
        self.encode_inner(msg, Some(tally))
    }

    fn encode_inner(&self, msg: &[FieldElem], mut tally: Option<&mut OpTally>) -> Result<Codeword> {
        let p = self.params;
        self.check_symbols(msg, p.k())?;
        let tt = p.parity_len();
        let mut acc = vec![0 as FieldElem; tt];
        let mut buf = vec![0 as FieldElem; tt];
        for (i, block) in msg.chunks(tt).enumerate() {
            buf.copy_from_slice(block);
            ifft_xbar_in_place(&self.ctx, &mut buf, self.block_shift(i + 1), tally.as_deref_mut())?;
            for (a, &b) in acc.iter_mut().zip(&buf) {
                *a ^= b;
            }
        }
        fft_xbar_in_place(&self.ctx, &mut acc, 0, tally)?;
        let mut symbols = acc;
        symbols.extend_from_slice(msg);
        Ok(Codeword { symbols, parity_len: tt })
    }

    /// Sum of the per-block `X̄` interpolants; zero exactly for codewords.
    pub fn blockwise_ifft_sum(&self, recv: &[FieldElem]) -> Result<Vec<FieldElem>> {
        self.check_symbols(recv, self.params.n())?;
        let tt = self.params.parity_len();
        let mut acc = vec![0 as FieldElem; tt];
        let mut buf = vec![0 as FieldElem; tt];
        for (i, block) in recv.chunks(tt).enumerate() {
            buf.copy_from_slice(block);
            ifft_xbar_in_place(&self.ctx, &mut buf, self.block_shift(i), None)?;
            for (a, &b) in acc.iter_mut().zip(&buf) {
                *a ^= b;
            }
        }
        Ok(acc)
    }

    /// The top `T` coefficients (indices `k .. n`) of the `X`-basis interpolant
    /// of `recv` over the whole field.
    pub fn syndrome(&self, recv: &[FieldElem]) -> Result<PolyX> {
        let mut acc = self.blockwise_ifft_sum(recv)?;
        // The blockwise sum is the X̄ slice; X_(k+j) = p_(k+j) X̄_(k+j).
        let k = self.params.k();
        let f = self.ctx.field();
        for (j, c) in acc.iter_mut().enumerate() {
            *c = f.mul(*c, self.ctx.norm_const_inv(k + j));
        }
        Ok(PolyX::from_coeffs(acc))
    }

    /// Positions `i` with `lambda(omega_i) = 0`, in increasing order.
    pub fn find_roots(&self, lambda: &PolyX) -> Result<Vec<usize>> {
        let tt = self.params.parity_len();
        let scaled = self.ctx.x_to_xbar(lambda)?.padded(tt)?;
        let mut roots = Vec::new();
        let mut buf = vec![0 as FieldElem; tt];
        for i in 0..self.params.blocks() {
            buf.copy_from_slice(&scaled);
            fft_xbar_in_place(&self.ctx, &mut buf, self.block_shift(i), None)?;
            roots.extend(
                buf.iter()
                    .enumerate()
                    .filter(|&(_, &v)| v == 0)
                    .map(|(j, _)| i * tt + j),
            );
        }
        Ok(roots)
    }

    /// `q(omega_i) / lambda'(omega_i)` at every root, evaluating only the
    /// blocks that contain roots.
    pub fn error_values(
        &self,
        q: &PolyX,
        lambda: &PolyX,
        roots: &[usize],
    ) -> Result<BTreeMap<usize, FieldElem>> {
        let tt = self.params.parity_len();
        let f = self.ctx.field();
        let qs = self.ctx.x_to_xbar(q)?.padded(tt)?;
        let ds = self
            .ctx
            .x_to_xbar(&formal_derivative(&self.ctx, lambda))?
            .padded(tt)?;
        let mut out = BTreeMap::new();
        let mut qb = vec![0 as FieldElem; tt];
        let mut db = vec![0 as FieldElem; tt];
        let mut start = 0;
        while start < roots.len() {
            let blk = roots[start] / tt;
            let end = start + roots[start..].partition_point(|&r| r / tt == blk);
            qb.copy_from_slice(&qs);
            db.copy_from_slice(&ds);
            fft_xbar_in_place(&self.ctx, &mut qb, self.block_shift(blk), None)?;
            fft_xbar_in_place(&self.ctx, &mut db, self.block_shift(blk), None)?;
            for &r in &roots[start..end] {
                let j = r - blk * tt;
                if db[j] == 0 {
                    return Err(DecodeFailure::RepeatedRoot(r).into());
                }
                let v = f.div(qb[j], db[j])?;
                if v == 0 {
                    return Err(DecodeFailure::ZeroErrorValue(r).into());
                }
                out.insert(r, v);
            }
            start = end;
        }
        Ok(out)
    }

    /// Corrects up to `T / 2` symbol errors.
    ///
    /// Fails with [`Error::Decode`] when the word is detectably beyond capacity.
    /// Like any bounded-distance decoder it may instead return a different
    /// codeword when more than `T / 2` errors occurred.
    pub fn decode(&self, recv: &[FieldElem]) -> Result<DecodeResult> {
        let p = self.params;
        let s = self.syndrome(recv)?;
        let mut corrected = Codeword { symbols: recv.to_vec(), parity_len: p.parity_len() };
        if s.is_zero() {
            return Ok(DecodeResult {
                corrected,
                error_positions: Vec::new(),
                error_values: BTreeMap::new(),
            });
        }

        let (lambda, q) = solve_key_equation(&self.ctx, &s, p.t())?;
        let deg = lambda.degree().unwrap_or(0);
        if deg == 0 {
            return Err(DecodeFailure::ConstantLocator.into());
        }
        let roots = self.find_roots(&lambda)?;
        if roots.len() < deg {
            return Err(DecodeFailure::MissingRoots { degree: deg, roots: roots.len() }.into());
        }
        let values = self.error_values(&q, &lambda, &roots)?;
        for (&i, &v) in &values {
            corrected.symbols[i] ^= v;
        }
        if !self.syndrome(&corrected.symbols)?.is_zero() {
            return Err(DecodeFailure::ResidualSyndrome.into());
        }
        Ok(DecodeResult { corrected, error_positions: roots, error_values: values })
    }
}
