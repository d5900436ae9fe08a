//! Error type shared by all fallible operations in this crate.

use thiserror::Error;

/// Errors reported by matrix constructors and operations.
#[derive(Debug, Clone, Error)]
pub enum QmatError {
    /// Shapes are incompatible or a dimension cap was exceeded.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An index set or parameter value is invalid for the given operands.
    #[error("argument error: {0}")]
    Argument(String),

    /// A matrix required to be Hermitian deviates from its adjoint.
    #[error("not Hermitian: max |M - M†| = {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// A matrix fails one of the density-matrix invariants.
    #[error("not a density matrix: {0}")]
    NotDensity(String),

    /// A matrix entry is NaN or infinite.
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// An iterative numerical routine failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, QmatError>;
