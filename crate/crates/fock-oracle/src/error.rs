//! Error type for the brute-force oracle.

use thiserror::Error;

/// Errors reported by mode matching and brute-force evaluation.
#[derive(Debug, Error)]
pub enum FockError {
    /// A mode configuration is structurally invalid (mode counts,
    /// mismatched amplitude lengths, non-finite values).
    #[error("invalid mode configuration: {0}")]
    Config(String),
    /// The requested truncation cannot represent the state faithfully
    /// (tail bound violated or cutoff doubling failed to converge).
    #[error("insufficient precision: {0}")]
    Precision(String),
    /// An internal consistency check failed (e.g. a slot Gram matrix
    /// with a significantly negative eigenvalue).
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, FockError>;
