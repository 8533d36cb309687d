use std::io;

use besselrec_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flag values or config; nothing is printed on stdout.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("verification failed: {}", .0.join(", "))]
    VerifyFailed(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(Error::Parity { .. }) => 3,
            CliError::Core(Error::Domain(_) | Error::Tolerance(_)) => 4,
            CliError::Core(Error::Internal(_)) | CliError::Io(_) | CliError::VerifyFailed(_) => 1,
        }
    }
}
