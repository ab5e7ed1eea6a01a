use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("power series with zero constant term is not invertible")]
    NotInvertible,

    #[error("cannot divide by t^{shift}: coefficient of t^{index} is nonzero")]
    NonzeroLowTerm { shift: usize, index: usize },

    #[error("index {index} out of range for table of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated for {identity}: {reason}")]
    Precondition { identity: String, reason: String },

    #[error("cannot replay report: {0}")]
    Replay(String),
}
