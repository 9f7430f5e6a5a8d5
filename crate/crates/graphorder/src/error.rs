use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input such as a self-loop or an out-of-range endpoint.
    #[error("validation error: {0}")]
    Validation(String),
    /// Argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A requested size exceeds a configured hard limit.
    #[error("resource error: {0}")]
    Resource(String),
    /// A universe is too small to certify a result.
    #[error("precondition error: {0}")]
    Precondition(String),
    /// Formula text could not be parsed.
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    /// A formula refers to an unknown name or is otherwise ill-formed.
    #[error("resolution error: {0}")]
    Resolution(String),
    /// Evaluation failed.
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
