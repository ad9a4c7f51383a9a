use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] choi_core::Error),

    #[error("cannot serialize report: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for bad input, 2 for internal inconsistencies.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(choi_core::Error::Internal(_))
            | CliError::Core(choi_core::Error::NoConvergence { .. })
            | CliError::Serialize(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
