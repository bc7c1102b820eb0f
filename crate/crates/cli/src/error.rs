use std::fmt;
use std::process::ExitCode;

use weil_core::WeilError;

/// Failures that end a run, each with its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config values or suite names: exit 2.
    Usage(String),
    /// Files that cannot be read or written: exit 3.
    Io(String),
    /// At least one check failed: exit 1.
    Checks(usize),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Checks(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Checks(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl From<WeilError> for CliError {
    fn from(e: WeilError) -> Self {
        match e {
            WeilError::Io(m) => CliError::Io(m),
            WeilError::Parse { .. } => CliError::Io(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
