use std::process::ExitCode;

use vickset_core::Error as CoreError;

/// Errors surfaced by the command-line tool, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Cap(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    /// Some law did not give its expected verdict.
    #[error("{0} law(s) did not conform")]
    Nonconforming(usize),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Parse(_) => 1,
            CliError::Validation(_) | CliError::Io { .. } => 2,
            CliError::Cap(_) => 3,
            CliError::Nonconforming(_) => 4,
        })
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Cap { .. } => CliError::Cap(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
