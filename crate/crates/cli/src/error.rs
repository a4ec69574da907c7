use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hypercolor::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 usage, 2 domain, 3 budget.
    pub fn exit_code(&self) -> ExitCode {
        use hypercolor::Error as E;
        ExitCode::from(match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Core(E::Budget { .. }) => 3,
            CliError::Core(E::Io(_)) => 1,
            CliError::Core(_) => 2,
        })
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
