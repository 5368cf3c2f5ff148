use thiserror::Error;

/// Errors surfaced by code construction, decoding, and simulation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// The syndrome cannot be produced by any Y-type error.
    #[error("syndrome is not attainable by a Y-type error")]
    UnattainableSyndrome,

    #[error("inconsistent syndrome: {0}")]
    InconsistentSyndrome(String),

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
