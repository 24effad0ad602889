use exactpoly::PolyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("elements belong to different algebras")]
    ParentMismatch,
    #[error("base field mismatch: {0}")]
    BaseMismatch(String),
    #[error("algebra must be normalized (projection row (1,0,...,0))")]
    NotNormalized,
    #[error("expected {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("coordinate 0 of e({var}) must equal {var}")]
    Coordinate0 { var: String },
    #[error("index {index} out of range (rank {rank})")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("e({element}) is not a unit: {factor} vanishes")]
    NonUnit { element: String, factor: String },
    #[error("derivative is not a unit in the local algebra")]
    DerivativeNotUnit,
    #[error("Newton iteration did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("rank {rank} exceeds the configured cap {cap}")]
    RankBudget { rank: usize, cap: usize },
    #[error("univariate factorization of degree {0} exceeds the budget; supply factor hints")]
    FactorBudget(usize),
    #[error("invalid factor hints: {0}")]
    BadHints(String),
    #[error("hypothesis check failed: {0}")]
    Hypothesis(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, DError>;
