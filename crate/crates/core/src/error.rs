use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("exponent {exponent} at index {index} overflows; renormalize before summing")]
    Overflow { index: usize, exponent: f64 },
    #[error("invalid weight function: {0}")]
    InvalidWeight(String),
    #[error("invalid weight sequence: {0}")]
    InvalidSequence(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("outside reliable range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
