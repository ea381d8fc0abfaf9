use thiserror::Error;

/// Errors raised by the analysis routines when an argument falls outside
/// the range a formula or procedure is defined for.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} requires n >= {min}, got {got}")]
    BelowMinimum {
        what: &'static str,
        min: usize,
        got: usize,
    },
    #[error("{what} requires n <= {max}, got {got}")]
    AboveMaximum {
        what: &'static str,
        max: usize,
        got: usize,
    },
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn require_at_least(what: &'static str, min: usize, got: usize) -> Result<()> {
    if got < min {
        Err(Error::BelowMinimum { what, min, got })
    } else {
        Ok(())
    }
}
