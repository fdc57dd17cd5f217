use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A documented precondition does not hold; the payload names the
    /// violated constraint.
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    /// An internal consistency condition failed, usually signalling a
    /// tolerance mismatch between two routines.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    /// While searching for zeros, a nonnegative vector with strictly
    /// negative quadratic value was found on some face: the input matrix
    /// cannot be copositive. The witness is reported in `f64` regardless
    /// of the working scalar type.
    #[error("not copositive: found x >= 0 with x'Ax = {value:e}")]
    NotCopositiveEvidence { witness: Vec<f64>, value: f64 },
}

impl Error {
    pub(crate) fn constraint(msg: impl Into<String>) -> Self {
        Error::ConstraintViolation(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
