use thiserror::Error;

/// Errors raised by channel construction, classification and scanning.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bloch vector has norm {norm}, outside the unit ball")]
    BlochOutOfBall { norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("map is not completely positive (minimum Choi eigenvalue {min_eigenvalue:.3e})")]
    NotCompletelyPositive { min_eigenvalue: f64 },

    #[error("Kraus set is not trace preserving (completeness deviation {deviation:.3e})")]
    NotTracePreserving { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid T-matrix: {0}")]
    InvalidTMatrix(String),

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("noise parameter {0} outside [-1/3, 1]")]
    InvalidNoiseParameter(f64),

    #[error("control basis is not orthonormal (overlap {overlap:.3e})")]
    NonOrthogonalBasis { overlap: f64 },

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty input")]
    EmptyInput,
}

pub type Result<T> = std::result::Result<T, Error>;
