use thiserror::Error;

/// Errors raised by parsers and by operations whose preconditions fail.
///
/// Kernel gaps and oracle gaps are not errors; they are reported inside the
/// results that can contain them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed literal `{0}`")]
    Literal(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("render error: {0}")]
    Render(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
