use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("invariant failure: {0}")]
    Invariant(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Invariant(_) | CliError::Io(_) => ExitCode::from(1),
        }
    }
}

impl From<qsmoments_core::Error> for CliError {
    fn from(e: qsmoments_core::Error) -> Self {
        match e {
            qsmoments_core::Error::InvalidArgument(msg) => CliError::Usage(msg),
            other => CliError::Invariant(other.to_string()),
        }
    }
}
