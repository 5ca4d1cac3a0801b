//! CLI failure taxonomy, split by exit code.

use thiserror::Error;

/// Anything that stops a command. `Input` means the caller's files or
/// flags are at fault (exit 2, same class as a usage error); `Internal`
/// means this tool failed on valid input (exit 1).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

/// Library validation failures are always input problems: every value the
/// library checks came from the caller's files or flags.
impl From<mark::Error> for CliError {
    fn from(e: mark::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
