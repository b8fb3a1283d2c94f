use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied inconsistent or out-of-range input.
    #[error("usage error: {0}")]
    Usage(String),

    /// A tree pair or key that does not describe a valid element.
    #[error("structural error: {0}")]
    Structural(String),

    /// The ladder produced a coefficient that cannot occur in a correct run.
    #[error("ladder corruption at level {level}: {detail}")]
    Corruption { level: usize, detail: String },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    /// The Hankel ladder hit a non-positive determinant.
    #[error("spectral degeneracy: D_{index} = {value} is not positive; ladder truncated at {truncated_at}")]
    Degenerate {
        index: usize,
        value: String,
        truncated_at: usize,
    },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Verification(_) | Error::Corruption { .. } | Error::Structural(_) => 2,
            Error::Numeric(_) | Error::Degenerate { .. } | Error::Resource(_) | Error::Io { .. } => 3,
        }
    }
}
