use crate::complex::CellId;
use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input (unknown ids, non-simple paths, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// A document could not be read; positions are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    /// The complex handed to a builder violates a structural invariant.
    #[error("load check failed: {0}")]
    Load(String),

    /// An operation was called outside its domain (e.g. non-manifold space).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The contraction met a configuration it does not handle: the
    /// intersection of the surface with the selected cell is not a single
    /// connected patch of faces.
    #[error("unsupported configuration at cell {cell:?}: {reason}")]
    Unsupported { cell: CellId, reason: String },

    /// An iterative procedure used up its budget before reaching its goal.
    #[error("budget of {budget} exhausted: {state}")]
    BudgetExhausted { budget: usize, state: String },

    /// A self-check on produced output failed. Indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
