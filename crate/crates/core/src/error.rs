use thiserror::Error;

/// Errors raised by the arithmetic, transform and coding layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field dimension {0} is outside the supported range 2..=16")]
    UnsupportedDimension(u32),

    #[error("reduction polynomial {poly:#x} is not irreducible of degree {m}")]
    ReducibleModulus { m: u32, poly: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("basis has {got} elements, expected {expected}")]
    BasisLength { expected: usize, got: usize },

    #[error("basis elements are linearly dependent over GF(2) (fails at index {0})")]
    DependentBasis(usize),

    #[error("transform size 2^{k} exceeds the field size 2^{m}")]
    TransformTooLarge { k: u32, m: u32 },

    #[error("buffer length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("polynomial of degree {degree} does not fit in {len} coefficients")]
    PolyTooLong { degree: usize, len: usize },

    #[error("product degree {degree} exceeds the supported bound {bound}")]
    ProductTooLarge { degree: usize, bound: usize },

    #[error("degree {0} is not of the form 2^j - 1")]
    NotMersenneDegree(usize),

    #[error("half-GCD precondition violated: {0}")]
    HgcdPrecondition(String),

    #[error("invalid code parameters m = {m}, t = {t}: need 1 <= t <= m - 1")]
    InvalidParams { m: u32, t: u32 },

    #[error("length mismatch: expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("symbol {value:#x} at index {index} does not fit in {m} bits")]
    SymbolOutOfRange { index: usize, value: u16, m: u32 },

    #[error(transparent)]
    Decode(#[from] DecodeFailure),
}

/// Reasons the syndrome decoder gives up on a received word.
///
/// All of these indicate more errors than the code can correct.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeFailure {
    #[error("error locator of degree {degree} has only {roots} roots in the field")]
    MissingRoots { degree: usize, roots: usize },

    #[error("error locator is constant although the syndrome is nonzero")]
    ConstantLocator,

    #[error("error locator has a repeated root at position {0}")]
    RepeatedRoot(usize),

    #[error("computed error value at position {0} is zero")]
    ZeroErrorValue(usize),

    #[error("corrected word still has a nonzero syndrome")]
    ResidualSyndrome,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
