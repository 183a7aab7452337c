use thiserror::Error;

/// Errors raised by the library. The CLI maps every variant to exit code 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("index {index} out of range for length {len}")]
    Index { index: usize, len: usize },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("sequence of length {len} too short for order {order}")]
    Length { len: usize, order: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("exact arithmetic unavailable: {0}")]
    ExactUnavailable(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
