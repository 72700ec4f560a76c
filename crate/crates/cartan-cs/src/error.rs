use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point outside the domain: {0}")]
    DomainViolation(String),
    #[error("singular matrix: {0}")]
    SingularMatrix(String),
    #[error("invalid scale dimension lambda = {lambda}: {reason}")]
    InvalidScaleDimension { lambda: i64, reason: &'static str },
    #[error("invalid spin label: {0}")]
    InvalidSpin(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("mode count mismatch: expected {expected}, found {found}")]
    ModeMismatch { expected: usize, found: usize },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
