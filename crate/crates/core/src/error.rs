use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid exponent {value}: {reason}")]
    InvalidExponent { value: f64, reason: &'static str },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid measure space: {0}")]
    InvalidSpace(String),

    #[error("value outside the domain of {what}: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("partition is not in class Y({w}): ratio condition fails at block {k}")]
    NotInClassY { w: f64, k: usize },

    #[error("partition prefix exhausted at block {0} and no continuation is defined")]
    PartitionExhausted(usize),

    #[error("curve cannot be fitted: {0}")]
    Unfittable(String),

    #[error("u grids do not match at row {0}")]
    GridMismatch(usize),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
