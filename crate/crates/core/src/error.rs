use thiserror::Error;

/// Errors raised by the geometry and group routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("length mismatch: expected {expected} coordinates, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("the identity word (zero vector) is not a point of the projective space")]
    IdentityNotAPoint,

    #[error("point {0} does not lie on the quadric")]
    OffQuadric(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("usage error: {0}")]
    Usage(String),

    /// A structural property that must always hold was violated.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
