use thiserror::Error;

/// Errors raised by the library.
///
/// The variants map one-to-one onto the CLI exit codes: `Parse` → 1,
/// `Resource` → 3, everything else → 2.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("label error: {0}")]
    Label(String),
    #[error("argument error: {0}")]
    Argument(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("pivot error: {0}")]
    Pivot(String),
    #[error("resource cap exceeded: {what} is limited to {limit}, got {got}")]
    Resource { what: &'static str, limit: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 1,
            Error::Resource { .. } => 3,
            _ => 2,
        }
    }
}
