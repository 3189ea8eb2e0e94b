use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: i64, rank: usize },
    #[error("{0}")]
    Domain(String),
    #[error("ambient dimension {dim} exceeds the cap {cap}")]
    ResourceCap { dim: usize, cap: usize },
    #[error("element is not homogeneous of rank {rank} and degree {degree}")]
    Inhomogeneous { rank: usize, degree: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
