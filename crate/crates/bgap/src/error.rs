use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Input(#[from] bgap_core::Error),

    #[error("{0}")]
    Violation(String),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Input(bgap_core::Error::NegativeCoefficient { .. }) => 1,
            CliError::Input(bgap_core::Error::NonDivisible { .. }) => 1,
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}
