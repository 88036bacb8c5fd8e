//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid signature: {0}")]
    Signature(String),

    #[error("invalid scalar: {0}")]
    Scalar(String),

    #[error("invalid algebra: {0}")]
    Algebra(String),

    #[error("invalid word: {0}")]
    Word(String),

    #[error("saturation limit exceeded: {0}")]
    Saturation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
