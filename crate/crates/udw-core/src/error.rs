//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by schedule construction, kernel evaluation, and state
/// validation.
#[derive(Debug, Error)]
pub enum UdwError {
    /// A coupling schedule violates a structural rule (event counts, slot
    /// numbering, time ordering, or an unsupported interaction pattern).
    #[error("invalid schedule: {0}")]
    Schedule(String),
    /// A function argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A two-detector state failed its consistency checks (trace or
    /// coherence-block positivity).
    #[error("invalid detector-pair state: {0}")]
    State(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, UdwError>;
