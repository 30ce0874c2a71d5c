use thiserror::Error;

/// Errors produced by problem construction, evaluation and IO.
#[derive(Debug, Error)]
pub enum QuboError {
    #[error("assignment has {got} bits but the problem has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coefficient index ({i}, {j}) out of range for n = {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("invalid coefficient bounds: lo = {lo} must be strictly below hi = {hi}")]
    InvalidBounds { lo: f64, hi: f64 },

    #[error("{n} variables exceed the exhaustive-enumeration cap of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("problem must have at least one variable")]
    EmptyProblem,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed qubo file: {0}")]
    Format(String),
}
