use thiserror::Error;

pub type Result<T> = std::result::Result<T, RegressError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegressError {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("rank deficient: estimated rank {rank} < {cols} columns")]
    RankDeficient { rank: usize, cols: usize },

    #[error("under-determined: {samples} samples, at least {required} required")]
    UnderDetermined { samples: usize, required: usize },

    #[error("constant target: r² undefined for a fit with non-zero residuals")]
    DegenerateTarget,

    #[error("polynomial degree {degree} exceeds the cap of {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("model evaluation outside its domain: {0}")]
    EvalDomain(String),

    #[error("frac must lie in (0, 1], got {0}")]
    InvalidFrac(f64),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}
