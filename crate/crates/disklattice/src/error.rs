use std::fmt;

/// Process exit codes. The numeric values are part of the CLI contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerifyFailed = 1,
    InvalidInput = 2,
    Io = 3,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug)]
pub enum AppError {
    /// Bad flag, config file contents or lattice; maps to exit code 2.
    Invalid(String),
    /// Unreadable config or unwritable output; maps to exit code 3.
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl AppError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        AppError::Invalid(msg.into())
    }

    pub fn status(&self) -> ExitStatus {
        match self {
            AppError::Invalid(_) => ExitStatus::InvalidInput,
            AppError::Io { .. } => ExitStatus::Io,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Invalid(m) => write!(f, "invalid input: {m}"),
            AppError::Io { path, source } => write!(f, "{path}: {source}"),
        }
    }
}

impl std::error::Error for AppError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            AppError::Io { source, .. } => Some(source),
            AppError::Invalid(_) => None,
        }
    }
}

impl From<disklattice_core::Error> for AppError {
    fn from(e: disklattice_core::Error) -> Self {
        AppError::Invalid(e.to_string())
    }
}
