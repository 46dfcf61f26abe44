use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("modulus {0} must be a prime in (2^20, 2^32)")]
    InvalidPrime(u64),
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("exponent overflow: exponents are limited to 65535")]
    ExponentOverflow,
    #[error("slice bounds out of range: {0}")]
    BoundsError(String),
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("no standard monomials of degree {0}")]
    NoStandardMonomials(u32),
    #[error("polynomial has a term in the initial ideal: {0}")]
    NotReduced(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("instance is not generic after {attempts} attempts: {reason}")]
    GenericityFailure { attempts: u32, reason: String },
    #[error("rows of M_{i} are dependent: rank {rank} < {rows}")]
    RankDeficiency { i: u32, rank: usize, rows: usize },
    #[error("degree {d} is below delta = {delta}")]
    DegreeTooSmall { d: u32, delta: u32 },
    #[error("degree ordering violated: extra degree {d} is below the largest generator degree {max}")]
    DegreeOrderViolation { d: u32, max: u32 },
    #[error("index {i} is outside the {regime} regime")]
    RegimeError { i: u32, regime: String },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}
