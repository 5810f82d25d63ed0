use thiserror::Error;

/// Errors surfaced by the engine.
#[derive(Debug, Error)]
pub enum Error {
    /// Tensor extents do not line up for the requested operation.
    #[error("dimension error in {op}: {details}")]
    Dimension { op: &'static str, details: String },

    /// A structural configuration is invalid (group counts, probabilities, ...).
    #[error("config error in {op}: {details}")]
    Config { op: &'static str, details: String },

    /// Batch statistics cannot be computed from the given data.
    #[error("statistics error in {op}: {details}")]
    Stats { op: &'static str, details: String },

    /// A class id is outside the label vocabulary.
    #[error("label error: {0}")]
    Label(String),

    /// Dataset scanning failed (empty class, unreadable root, ...).
    #[error("ingestion error: {0}")]
    Ingestion(String),

    /// An image payload could not be decoded.
    #[error("decode error at byte {offset}: {details}")]
    Decode { offset: usize, details: String },

    /// A weight archive is malformed or fails its integrity check.
    #[error("archive error in field `{field}` at byte {offset}: {details}")]
    Archive {
        field: &'static str,
        offset: usize,
        details: String,
    },

    /// A numeric invariant was violated at runtime (NaN loss, ...).
    #[error("numeric error: {0}")]
    Numeric(String),

    /// An API contract was violated by the caller.
    #[error("contract error: {0}")]
    Contract(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn dim(op: &'static str, details: impl Into<String>) -> Self {
        Error::Dimension {
            op,
            details: details.into(),
        }
    }

    pub(crate) fn config(op: &'static str, details: impl Into<String>) -> Self {
        Error::Config {
            op,
            details: details.into(),
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
