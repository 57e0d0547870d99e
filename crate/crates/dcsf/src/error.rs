use std::path::PathBuf;

/// Failure of a command, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, unreadable or invalid input files (exit code 1).
    #[error("{0}")]
    Input(String),
    /// Anything that goes wrong once the inputs are accepted (exit code 2).
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) => 1,
            Self::Runtime(_) => 2,
        }
    }

    pub(crate) fn read(path: &std::path::Path, e: impl std::fmt::Display) -> Self {
        Self::Input(format!("{}: {e}", path.display()))
    }

    pub(crate) fn write(path: &std::path::Path, e: impl std::fmt::Display) -> Self {
        Self::Runtime(format!("cannot write {}: {e}", path.display()))
    }
}

impl From<dcsf_core::Error> for CliError {
    fn from(e: dcsf_core::Error) -> Self {
        match e {
            dcsf_core::Error::InvalidInput(_) => Self::Input(e.to_string()),
            _ => Self::Runtime(e.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub(crate) fn missing(path: PathBuf) -> CliError {
    CliError::Input(format!("{} does not exist", path.display()))
}
