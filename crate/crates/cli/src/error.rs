use std::path::Path;

/// Failures surfaced by the command-line driver, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("solver did not converge: {0}")]
    NonConvergence(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] replen_core::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::NonConvergence(_) => 2,
            Self::Budget(_) | Self::Core(replen_core::Error::BudgetExceeded { .. }) => 3,
            _ => 1,
        }
    }
}
