use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid scalar {0:?}")]
    Scalar(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("{0:?} is not invertible in the ground field")]
    NotInvertible(String),
    #[error("invalid monomial label {0:?}")]
    Label(String),
    #[error("invalid series at byte {pos}: {msg}")]
    Series { pos: usize, msg: String },
    #[error("invalid field {0:?}: expected rational or prime:<odd prime below 2^31>")]
    Field(String),
    #[error("invalid json: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vector length {found} does not match dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("elements belong to different algebras")]
    Mismatch,
    #[error("ideal contains the unit")]
    ContainsUnit,
    #[error("subspace is not closed under multiplication")]
    NotAnIdeal,
    #[error("algebra invariant violated: {0}")]
    Invariant(String),
    #[error("rewriting did not terminate on {0}")]
    NonTerminating(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by the zero series")]
    DivisionByZero,
    #[error("denominator {0} has no unit constant term")]
    InvalidDenominator(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("multiplicity {e} is below h + 1 = {}", h + 1)]
    MultiplicityTooSmall { e: usize, h: usize },
    #[error("embedding codimension must be at least 2, got {0}")]
    CodimensionTooSmall(usize),
    #[error("e - h - 1 = {} exceeds the enumeration limit {max}", e - h - 1)]
    TooLarge { e: usize, h: usize, max: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("free module of k-dimension {needed} exceeds the cap {cap}; computed betti {computed:?}")]
    Truncated { needed: usize, cap: usize, computed: Vec<usize> },
}
