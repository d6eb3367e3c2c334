use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different algebras ({0} vs {1})")]
    AlgebraMismatch(String, String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid rewrite rule: {0}")]
    InvalidRule(String),
    #[error("rewriting system is not confluent: {0} unresolved overlap(s)")]
    NotConfluent(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operation requires numeric parameters, but `{0}` is symbolic")]
    SymbolicParameter(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("combinatorial budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
