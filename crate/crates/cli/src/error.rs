use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: crofton_core::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn core(context: impl Into<String>, source: crofton_core::Error) -> Self {
        CliError::Core { context: context.into(), source }
    }

    /// 1 for a numerical failure, 2 for anything the user can fix.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core { source: crofton_core::Error::NoConvergence { .. }, .. } => ExitCode::from(1),
            _ => ExitCode::from(2),
        }
    }
}
