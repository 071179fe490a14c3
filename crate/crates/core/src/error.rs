use thiserror::Error;

/// Errors raised by the engine. Law violations are not errors; they are
/// collected in a [`crate::report::ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate name `{name}` in {table}")]
    NameClash { table: String, name: String },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: String, name: String },
    #[error("missing table entry: {0}")]
    MissingEntry(String),
    #[error("object maps of the 1-cell and decoration layers disagree: {0}")]
    DecorationMismatch(String),
    #[error("incompatible boundaries at {at}: {detail}")]
    Compatibility { at: String, detail: String },
    #[error("cannot compose: {0}")]
    Composition(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn unknown(kind: &str, name: &str) -> Self {
        Error::UnknownName { kind: kind.to_string(), name: name.to_string() }
    }

    pub(crate) fn compat(at: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Compatibility { at: at.into(), detail: detail.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Invalid(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
