use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("factor {0} is not certified irreducible; supply a factored denominator")]
    UncertifiedFactor(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no telescoper of order <= {0} found")]
    MaxOrderExceeded(usize),
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;
