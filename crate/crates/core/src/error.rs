//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by constructors and decision procedures.
///
/// Constructors validate their inputs eagerly, so downstream operations can
/// assume well-formed values and only fail on genuinely unsupported requests.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid multiplicative set: {0}")]
    InvalidMultiplicativeSet(String),

    #[error("cardinality cap exceeded: {0}")]
    CapExceeded(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
