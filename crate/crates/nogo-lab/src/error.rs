//! Error type for the verification bench.

use thiserror::Error;

/// Errors reported by couplings, sequences, and witness suites.
#[derive(Debug, Error)]
pub enum NogoError {
    /// A linear-algebra operation failed.
    #[error(transparent)]
    Linalg(#[from] qmat::QmatError),

    /// Operands have incompatible dimensions.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An argument violates a precondition.
    #[error("argument error: {0}")]
    Argument(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, NogoError>;
