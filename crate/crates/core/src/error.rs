use thiserror::Error;

/// Errors raised by the algebra layer.
///
/// Mathematical outcomes such as "not divisible", "inconsistent system" or a
/// failed identity are not errors; they are returned as values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be an odd prime in 3..=13, got {0}")]
    UnsupportedPrime(u32),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("incomplete substitution: expected {expected} images, got {got}")]
    IncompleteSubstitution { expected: usize, got: usize },
    #[error("substitution must be linear")]
    NonLinearSubstitution,
    #[error("division by zero")]
    DivisionByZero,
    #[error("generators not independent")]
    DependentGenerators,
    #[error("argument lies in subspace")]
    ArgumentInSubspace,
    #[error("expected a linear form")]
    NotLinear,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("U must be a proper subspace of V")]
    NotProperSubspace,
    #[error("zero linear form not allowed here")]
    ZeroForm,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
