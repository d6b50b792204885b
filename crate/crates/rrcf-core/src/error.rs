//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero in Q(zeta_{level})")]
    DivisionByZero { level: u32 },

    #[error("bad cyclotomic level: {msg}")]
    BadLevel { msg: String },

    #[error("argument out of range: {msg}")]
    OutOfRange { msg: String },

    #[error("precision exhausted: {msg}")]
    PrecisionExhausted { msg: String },

    #[error("exact pole: Q_{index} = 0, approximant is projective infinity")]
    PoleEncountered { index: i64 },

    #[error("domain error: {msg}")]
    DomainError { msg: String },

    #[error("degenerate eigenvalues: 1/4 + a^m = 0")]
    DegenerateEigenvalues,

    #[error("heuristic classification inconclusive: {msg}")]
    HeuristicInconclusive { msg: String },

    #[error("5 divides m = {m}; Schur's limit formula does not apply")]
    FiveDivides { m: u64 },

    #[error("conjecture hypotheses violated: {msg}")]
    HypothesisViolated { msg: String },

    #[error("budget exhausted: {msg}")]
    BudgetExhausted { msg: String },

    #[error("inconclusive within precision: {msg}")]
    Inconclusive { msg: String },
}

impl Error {
    pub(crate) fn bad_level(msg: impl Into<String>) -> Self {
        Error::BadLevel { msg: msg.into() }
    }

    pub(crate) fn out_of_range(msg: impl Into<String>) -> Self {
        Error::OutOfRange { msg: msg.into() }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::DomainError { msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
