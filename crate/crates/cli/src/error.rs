use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    CapExceeded(pathcx_core::Error),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(pathcx_core::Error),
}

impl CliError {
    /// 0 is success; every failure class gets its own code.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::CapExceeded(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Io { .. } => 5,
            CliError::Core(_) => 1,
        }
    }
}

impl From<pathcx_core::Error> for CliError {
    fn from(err: pathcx_core::Error) -> Self {
        use pathcx_core::Error as E;
        match err {
            E::CapExceeded { .. } => CliError::CapExceeded(err),
            E::InvalidSequence { .. } | E::UnknownOperation { .. } | E::OutOfRange { .. } => {
                CliError::Usage(err.to_string())
            }
            other => CliError::Core(other),
        }
    }
}
