use thiserror::Error;

/// Failures with their stable exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, or an output that cannot be written.
    #[error("{0}")]
    Input(String),
    /// Existence or precondition failure.
    #[error("{0}")]
    Precondition(String),
    /// A verification or certified-residual check failed.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Input(_) => 3,
        }
    }
}

impl From<qtf_core::Error> for CliError {
    fn from(e: qtf_core::Error) -> Self {
        use qtf_core::Error as E;
        match e {
            E::Parse(_) => CliError::Input(e.to_string()),
            E::Internal(_) => CliError::Check(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
