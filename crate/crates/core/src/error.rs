use thiserror::Error;

/// Errors raised by the relation kernels and transformations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {alpha}")]
    Index { index: usize, alpha: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("relations live over different shapes ({left} vs {right})")]
    ShapeMismatch { left: String, right: String },

    #[error("transformation {0} is not a permutation")]
    NotInvertible(String),

    #[error("invalid transformation: {0}")]
    InvalidMap(String),

    #[error("size guard: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
