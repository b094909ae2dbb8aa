//! Error type shared by the numeric operations.

use thiserror::Error;

/// Errors surfaced by evaluation and bound operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Family or configuration invariants violated.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Evaluation point outside the family domain.
    #[error("x = {x} outside domain [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },

    /// `max_terms` reached before the geometric tail bound certified
    /// convergence.
    #[error("series truncation failed after {terms} terms")]
    Truncation { terms: usize },

    /// Formula singular at the requested point; the caller should use the
    /// analytic limit instead.
    #[error("singular evaluation point: {0}")]
    Singularity(&'static str),

    /// Result would exceed the binary64 range.
    #[error("overflow: {0}")]
    Overflow(&'static str),
}

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
