//! Additive FFT over GF(2^m) in the polynomial bases built from subspace
//! polynomials, fast division and half-GCD in those bases, and a systematic
//! Reed-Solomon codec of length `2^m` on top of them.

pub mod basis;
pub mod codec;
pub mod error;
pub mod field;
pub mod halfgcd;
pub mod oracle;
pub mod poly_ops;
pub mod transform;

pub use codec::{CodeParams, Codeword, DecodeResult, RsCodec};
pub use basis::{BasisCtx, Monic, Normalized, Poly, PolyX, PolyXbar};
pub use error::{DecodeFailure, Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use halfgcd::{PolyMat2, PolyVec2};
pub use transform::{EvalVec, OpTally};
