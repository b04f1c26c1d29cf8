use thiserror::Error;

/// Errors surfaced by the exact and numeric backends.
#[derive(Debug, Error)]
pub enum HermlagError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("invalid Lie element shape: {0}")]
    Shape(String),

    #[error("linear solve failed: {0}")]
    Solve(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, HermlagError>;
