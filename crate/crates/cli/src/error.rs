use poincare_charges::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),

    /// Well-formed input whose values break an invariant.
    #[error("invalid scene: {0}")]
    Invalid(String),

    #[error("{0}")]
    Core(#[from] CoreError),

    #[error("verification failed: {0} check(s) did not hold")]
    VerifyFailed(usize),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit status for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::VerifyFailed(_) => 1,
            CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                CoreError::NonConvergence { .. } => 4,
                CoreError::NonTimelikeMomentum(_) => 5,
                _ => 3,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
