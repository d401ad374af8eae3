use thiserror::Error;

/// Errors raised by the eigenscheme toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero vector is not a projective point")]
    ZeroPoint,

    #[error("duplicate point at indices {0} and {1}")]
    DuplicatePoint(usize, usize),

    #[error("point {0} does not have rational coordinates")]
    NonRationalPoint(usize),

    #[error("point is an eigenpoint; the Laguerre map is not defined there")]
    Indeterminate,

    #[error("2-vector is not decomposable (rank of wedge map is {rank}, expected {expected})")]
    NotDecomposable { rank: usize, expected: usize },

    #[error("eigenscheme is positive dimensional")]
    PositiveDimensional,

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("search exceeded {0} subset extensions; result inconclusive")]
    Inconclusive(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
