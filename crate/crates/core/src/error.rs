use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid bracket {entries:?} for n = {n}: {reason}")]
    InvalidBracket {
        entries: Vec<usize>,
        n: usize,
        reason: &'static str,
    },
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("numerically singular matrix: {0}")]
    Singular(String),
    #[error("illegal checkerboard: {0}")]
    IllegalBoard(String),
    #[error("coordinate transfer failed: {0}")]
    Transfer(String),
    #[error("non-generic choice detected: {0}")]
    NonGeneric(String),
    #[error("path deficit: {0}")]
    Deficit(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
