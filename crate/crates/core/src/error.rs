use thiserror::Error;

/// Errors raised by the exact algebra layer and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("pencil does not have only minimal column indices: {0}")]
    NotColumnMinimalOnly(String),
    #[error("pencil does not have only minimal row indices: {0}")]
    NotRowMinimalOnly(String),
    #[error("no monomorphism exists between the given modules")]
    NoMonomorphism,
    #[error("no epimorphism with the required kernel exists")]
    NoEpimorphism,
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("the first pencil is not a subpencil of the second")]
    NotSubpencil,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
