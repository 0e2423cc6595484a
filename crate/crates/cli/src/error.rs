use std::io;

use qwalk_core::market::MarketError;
use thiserror::Error;

/// Failure of a subcommand, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, bad config, or unreadable input (exit 2).
    #[error("{0}")]
    Usage(String),
    /// The run itself failed (exit 1).
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<qwalk_core::Error> for CliError {
    fn from(e: qwalk_core::Error) -> Self {
        use qwalk_core::Error::*;
        match e {
            OutOfRange { .. } | InvalidAngle(_) | InvalidNoise(_) | InvalidConfig(_) | UnknownDesign(_)
            | NeedsAncilla(_) => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<MarketError> for CliError {
    fn from(e: MarketError) -> Self {
        match e {
            MarketError::Io(err) => CliError::Usage(format!("cannot read input: {err}")),
            MarketError::NoBins => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
