use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("interval endpoints out of order: lo {lo} > hi {hi}")]
    InvertedInterval { lo: String, hi: String },

    #[error("division by an interval containing zero: {0}")]
    DivisionByZero(String),

    #[error("square root of an interval with negative lower endpoint {0}")]
    NegativeSqrt(String),

    #[error("inconsistent enclosures: {0}")]
    Inconsistent(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
