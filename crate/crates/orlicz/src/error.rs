use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the domain a routine supports (e.g. an exponent
    /// below 1, an interpolation weight outside [0, 1]).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input data breaks a structural requirement: non-finite entries, a
    /// non-convex sample table, a matrix that is not positive semidefinite
    /// where one is required, and the like.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two operands have shapes that cannot be combined.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A search or evaluation left the representable range, or a supremum is
    /// infinite at the queried point.
    #[error("numeric overflow: {0}")]
    Overflow(String),

    /// An iterative routine reached its iteration cap before its tolerance.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// Malformed text input: a CSV cell, a JSON document, a function spec.
    #[error("parse error: {0}")]
    Parse(String),

    /// Filesystem failure while reading or writing.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
