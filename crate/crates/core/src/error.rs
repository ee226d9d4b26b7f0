use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebra specification `{0}`")]
    InvalidAlgebra(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("affine computation requires a grade cutoff")]
    MissingCutoff,
    #[error("grade-0 factor with negative exponent has no finite expansion")]
    InfiniteSeries,
    #[error("non-integral value where an integer was required: {0}")]
    NonIntegral(String),
    #[error("recurrence division is not exact at {point}: {numerator} / {divisor}")]
    InexactDivision {
        point: String,
        numerator: String,
        divisor: String,
    },
    #[error("negative multiplicity {value} at dominant weight {point}")]
    NegativeMultiplicity { point: String, value: String },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("level {0} is critical for this algebra")]
    CriticalLevel(String),
    #[error("embedding is not conformal at this level: {0}")]
    NotConformal(String),
    #[error("parse error: {0}")]
    Parse(String),
}
