use thiserror::Error;

/// Errors raised by the norm, partition and verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid exponent {0}: exponents must lie in [1, inf]")]
    InvalidExponent(String),

    #[error("support escapes the partition window")]
    WindowEscape,

    #[error("window is smaller than one partition cell")]
    DegenerateWindow,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("misuse: {0}")]
    Misuse(String),

    #[error("malformed function spec: {0}")]
    Spec(String),

    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;
