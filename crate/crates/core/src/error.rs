//! Crate-wide error type.

use crate::attack::PartialKnowledge;

/// Errors produced by every module in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A file could not be parsed; `line` is 1-based and includes the header.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Input data violated a structural contract.
    #[error("validation error: {0}")]
    Validation(String),

    /// An argument was outside its documented domain.
    #[error("argument error: {0}")]
    Argument(String),

    /// A numeric procedure failed (divergence, NaN, singular system).
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The oracle's query budget ran out mid-gather. Carries whatever
    /// knowledge was collected before the refusal.
    #[error("budget exhausted after {spent} queries")]
    BudgetExhausted {
        spent: u64,
        partial: Box<PartialKnowledge>,
    },

    /// The remote victim API could not be reached.
    #[error("transport error after {retries} retries: {msg}")]
    Transport { retries: u32, msg: String },

    /// Authentication with the victim API failed.
    #[error("auth error: {0}")]
    Auth(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}
