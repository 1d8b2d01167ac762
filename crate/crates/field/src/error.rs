use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    #[error("forbidden construction parameter: {0}")]
    ForbiddenParameter(String),
    #[error("indeterminate `{0}` is still present")]
    IndeterminatePresent(&'static str),
    #[error("zero input")]
    ZeroInput,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
