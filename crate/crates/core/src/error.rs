use thiserror::Error;

/// Errors produced by the library. Every failure mode that a caller can
/// trigger with bad input is represented here; internal invariant breaks
/// are `debug_assert`s instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension must be at least 3, got n={0}")]
    AmbientDimension(usize),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("point index {index} out of range 1..={q}")]
    IndexOutOfRange { index: usize, q: usize },
    #[error("generator needs two distinct points, got w({0},{0})")]
    RepeatedIndex(usize),
    #[error("mismatched ring parameters: {left} vs {right}")]
    ParamMismatch { left: String, right: String },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("expression is not a nonzero multiple of a single basis monomial: {0}")]
    NotMonomial(String),
    #[error("{0} is not invertible in the coefficient ring")]
    NotInvertible(String),
    #[error("ground set of {0} points exceeds the supported maximum of 31")]
    GroundSetTooLarge(usize),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("grading ({q},{t}) does not total {points} points")]
    GradingMismatch { q: usize, t: usize, points: usize },
    #[error("malformed pairing table: {0}")]
    TableFormat(String),
    #[error("pairing table entry {index}: {message}")]
    TableEntry { index: usize, message: String },
    #[error("conflicting values for pairing table key {key}: {first} vs {second}")]
    ConflictingEntry {
        key: String,
        first: String,
        second: String,
    },
    #[error("missing pairing table entry for {key}")]
    MissingEntry { key: String },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("the boundary pairing vanishes by a parity argument only for odd n; got n={0}")]
    EvenDimension(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
