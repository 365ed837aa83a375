use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("base-space dimension {0} outside supported range 1..=16")]
    DimOutOfRange(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("grade {grade} out of range for dimension {dim}")]
    GradeOutOfRange { grade: usize, dim: usize },
    #[error("grade mismatch: {left} vs {right}")]
    GradeMismatch { left: usize, right: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate span: vector {index} is linearly dependent on its predecessors")]
    DegenerateSpan { index: usize },
    #[error("rank deficient: column {column} is linearly dependent on its predecessors")]
    RankDeficient { column: usize },
    #[error("zero blade has no unit")]
    ZeroBlade,
    #[error("zero normal vector")]
    ZeroNormal,
    #[error("rotor has zero modulus and no inverse")]
    NonInvertibleRotor,
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("bivector split failed: {0}")]
    SplitFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
