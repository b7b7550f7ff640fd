use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("fragment violation ({fragment}): {msg}")]
    Fragment { fragment: String, msg: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("resource cap exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: usize },
    #[error("inconsistent knowledge base")]
    Inconsistent,
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn fragment(tag: impl std::fmt::Display, msg: impl Into<String>) -> Error {
        Error::Fragment { fragment: tag.to_string(), msg: msg.into() }
    }
}
