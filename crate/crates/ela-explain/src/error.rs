use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Invalid arguments or configuration (exit 2).
    Config,
    /// Malformed or inconsistent input data (exit 3).
    Data,
    /// Numeric failure during computation (exit 4).
    Numeric,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument `{field}`: {reason}")]
    InvalidArgument { field: &'static str, reason: String },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("feature schema mismatch: {reason}")]
    SchemaMismatch { reason: String },

    #[error("{path}: row {row}: {reason}")]
    CsvRow {
        path: PathBuf,
        row: usize,
        reason: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("non-finite loss at epoch {epoch}, batch {batch}")]
    NonFiniteLoss { epoch: usize, batch: usize },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn invalid_argument(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            field,
            reason: reason.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvalidArgument { .. } | Error::Config(_) => ErrorClass::Config,
            Error::DimensionMismatch { .. }
            | Error::SchemaMismatch { .. }
            | Error::CsvRow { .. }
            | Error::Io { .. }
            | Error::Data(_) => ErrorClass::Data,
            Error::NonFiniteLoss { .. } | Error::Numeric(_) => ErrorClass::Numeric,
            Error::Context { source, .. } => source.class(),
        }
    }

    /// Wraps an error with location context, keeping its class.
    pub fn with_context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}
