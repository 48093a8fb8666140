use thiserror::Error;

/// Failures raised by the library.
///
/// Each variant maps to one CLI exit code (see [`MraError::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MraError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("audit failure: {0}")]
    Audit(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl MraError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        MraError::Parse { line, msg: msg.into() }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        MraError::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        MraError::Resource(msg.into())
    }

    /// Process exit code used by the `mra` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            MraError::Parse { .. } => 2,
            MraError::Domain(_) => 3,
            MraError::Resource(_) => 4,
            MraError::Audit(_) => 5,
            MraError::Io(_) => 1,
        }
    }
}

impl From<std::io::Error> for MraError {
    fn from(e: std::io::Error) -> Self {
        MraError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, MraError>;
