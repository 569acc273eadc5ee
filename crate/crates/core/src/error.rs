use thiserror::Error;

/// Errors raised by the geometric operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("integer vector is not primitive")]
    NotPrimitive,

    #[error("homogeneous vector must have a positive last entry")]
    NonPositiveWeight,

    #[error("vectors are linearly dependent")]
    LinearlyDependent,

    #[error("vectors do not extend to a lattice basis")]
    NotExtendable,

    #[error("simplex is not regular")]
    NotRegular,

    #[error("denominators do not match pairwise")]
    DenominatorMismatch,

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("input is outside the supported class: {0}")]
    NotInClass(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource bound exceeded: {0}")]
    ResourceExceeded(String),

    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
