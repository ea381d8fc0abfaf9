use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot read {what}: {source}")]
    Read {
        what: String,
        #[source]
        source: std::io::Error,
    },
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Analysis(#[from] dpqs_core::Error),
}

impl CliError {
    /// Process exit status: 2 for usage errors, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Analysis(
                dpqs_core::Error::BelowMinimum { .. }
                | dpqs_core::Error::AboveMaximum { .. }
                | dpqs_core::Error::TooFewSamples { .. }
                | dpqs_core::Error::InvalidParameter(_),
            ) => 2,
            _ => 1,
        }
    }
}
