use thiserror::Error;

use crate::ring::RingKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {0} and {1}")]
    DomainMismatch(RingKind, RingKind),

    #[error("division by zero")]
    DivisionByZero,

    #[error("inexact division: {0} does not divide {1}")]
    InexactDivision(String, String),

    #[error("{0} is not invertible in its ring")]
    NotInvertible(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),

    #[error("singular companion matrix: t_k = {0} is not invertible")]
    SingularMatrix(String),

    #[error("truncated parameters have no finite companion matrix")]
    TruncatedCore,

    #[error("finite core requires a nonzero last parameter")]
    ZeroLeadingParam,

    #[error("empty parameter list")]
    EmptyParams,

    #[error("sequence is not invertible: F_0 = {0}, expected 1")]
    NotInvertibleSequence(String),

    #[error("insufficient horizon: need {needed}, have {have}")]
    InsufficientHorizon { needed: usize, have: usize },

    #[error("weight vector has no entry for part {0}")]
    MissingWeight(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown catalog function {0:?}")]
    UnknownFunction(String),

    #[error("cycle not found within {0} steps")]
    BoundExceeded(usize),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
