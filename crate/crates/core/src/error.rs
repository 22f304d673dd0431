use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a unit vector: {0}")]
    NotUnitVector(String),
    #[error("expected an even number of vectors, got {0}")]
    OddLength(usize),
    #[error("scale mismatch: {0} vs {1}")]
    ScaleMismatch(String, String),
    #[error("wrong rank: expected r = {expected}, got {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("zero spinor")]
    ZeroSpinor,
    #[error("rank r = {0} too small")]
    RankTooSmall(usize),
    #[error("missing pair ({0},{1})")]
    MissingPair(usize, usize),
    #[error("empty input")]
    EmptyInput,
    #[error("matrix is not special orthogonal: {0}")]
    NotOrthogonal(String),
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
