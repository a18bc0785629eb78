use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The caller violated a precondition (wrong weight dimension, bad id,
    /// unsupported instance family, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// The graph or instance itself is invalid (disconnected, self-loop,
    /// malformed file contents, ...).
    #[error("invalid instance: {0}")]
    Instance(String),

    /// Exhaustive enumeration refused because the instance is too large.
    #[error("refusing to enumerate {count} spanning trees (limit {limit})")]
    TooManyTrees { count: f64, limit: u64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn instance(msg: impl Into<String>) -> Self {
        Error::Instance(msg.into())
    }

    /// Process exit code used by the command-line front end: 1 for usage
    /// errors, 2 for instance and guard errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Usage(_) => 1,
            _ => 2,
        }
    }
}
