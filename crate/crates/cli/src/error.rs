//! Error type carrying the process exit code: 2 for configuration and usage
//! problems, 3 for numeric failures while computing.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    ConfigRead {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Compute(#[from] tdho_core::Error),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code for this failure; 0 and 1 are reserved for success
    /// and validation-suite failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::ConfigRead { .. } => 2,
            CliError::Compute(_) | CliError::Output(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
