use thiserror::Error;

/// Errors raised by the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("coefficient outside the homomorphism's domain: {0}")]
    OutsideDomain(String),
    #[error("Groebner budget of {budget} reduction steps exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("operation requires characteristic 0, got characteristic {0}")]
    RequiresCharZero(u64),
    #[error("element is not invertible")]
    NotInvertible,
}

pub type Result<T> = std::result::Result<T, PolyError>;
