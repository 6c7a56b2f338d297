use thiserror::Error;

use crate::scalars::Ring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),

    #[error("element is not invertible in {0}")]
    NotInvertible(Ring),

    #[error("division by zero")]
    DivisionByZero,

    #[error("the parameter alpha must be nonzero")]
    DegenerateRoot,

    #[error("ring {0} has no variable alpha")]
    NoAlpha(Ring),

    #[error("index {index} out of range (expected {lo}..={hi})")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not an involution: {0}")]
    NotInvolution(String),

    #[error("involution is not annular: {0}")]
    NotAnnular(String),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("winding number is undefined for diagrams without through-strands")]
    WindingUndefined,

    #[error("diagram is not in O_n (odd seam parity)")]
    NotInOn,

    #[error("not covered: {0}")]
    NotCovered(String),

    #[error("cellularity violation: {0}")]
    Cellularity(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("evaluation error: {0}")]
    Eval(String),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
