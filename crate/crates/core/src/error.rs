/// Errors reported by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("sequence must contain at least one value")]
    EmptySequence,
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("weight at index {index} must be strictly positive, got {value}")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("value at index {index} must be strictly positive, got {value}")]
    NonPositive { index: usize, value: f64 },
    #[error("value at index {index} must be nonnegative, got {value}")]
    Negative { index: usize, value: f64 },
    #[error("weight partial sums stall at index {0}: weight below rounding resolution")]
    DegeneratePartials(usize),
    #[error("horizon {got} too small, need at least {need}")]
    HorizonTooSmall { need: usize, got: usize },
    #[error("horizon mismatch: {left} vs {right}")]
    HorizonMismatch { left: usize, right: usize },
    #[error("index {index} out of horizon {horizon}")]
    OutOfHorizon { index: usize, horizon: usize },
    #[error("denominator vanishes at index {0}")]
    ZeroDenominator(usize),
    #[error("Cesaro order must exceed -1, got {0}")]
    InvalidOrder(f64),
    #[error("exponent k must be at least 1, got {0}")]
    InvalidExponent(f64),
    #[error("row {row} has {got} entries, expected {expect}")]
    BadRowLength { row: usize, got: usize, expect: usize },
    #[error("zero diagonal entry at row {0}")]
    ZeroDiagonal(usize),
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
