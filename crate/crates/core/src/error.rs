use thiserror::Error;

/// Errors produced by the solvers and generators.
///
/// The variants map one-to-one onto the CLI exit-code taxonomy: validation
/// and parse problems are caller mistakes, budget refusals mean the question
/// could not be answered within the configured limits.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{resource} budget exceeded (limit {limit})")]
    BudgetExceeded { resource: &'static str, limit: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
