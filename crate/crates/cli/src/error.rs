use bcfea_core::SolveError;
use thiserror::Error;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Yes = 0,
    No = 1,
    Usage = 2,
    Budget = 3,
    Internal = 4,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("no tractable solver for this instance within the default limits")]
    NoTractableSolver,
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::Usage,
            CliError::NoTractableSolver => ExitCode::Budget,
            CliError::Internal(_) => ExitCode::Internal,
            CliError::Solve(e) => match e {
                SolveError::Budget(_) | SolveError::EnumerationBudget(_) | SolveError::TooManyItems { .. } => {
                    ExitCode::Budget
                }
                _ => ExitCode::Usage,
            },
        }
    }
}
