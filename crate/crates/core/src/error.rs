use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Lie type: {0}")]
    InvalidLieType(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} is not a root of {1}")]
    NotARoot(String, String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition {partition} is not a nilpotent orbit of {lie_type}")]
    InvalidOrbit { lie_type: String, partition: String },
    #[error("invalid Levi composition: {0}")]
    InvalidLevi(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid idempotent family: {0}")]
    InvalidIdempotents(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("element is not central")]
    NotCentral,
    #[error("spectrum not rational")]
    SpectrumNotRational,
    #[error("module is not generated by its corner {0}")]
    NotGeneratedByCorner(usize),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
