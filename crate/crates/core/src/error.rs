use thiserror::Error;

/// Errors raised by the engine. Every variant carries enough context to be
/// shown to a user without further decoration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("resource limit exceeded: {what} is {value}, limit is {limit}")]
    Resource {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("consistency check failed: {0}")]
    Check(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
