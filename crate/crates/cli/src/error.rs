use std::fmt;
use std::path::Path;

use admm_split::Error;

/// Everything a subcommand can fail with, mapped onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag combinations caught before any solver runs.
    Usage(String),
    Lib(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::Numerical { .. }) | CliError::Lib(Error::Singularity { .. }) => 3,
            CliError::Usage(_) | CliError::Lib(_) => 2,
            CliError::Io(_) => 1,
        }
    }

    pub fn io(path: &Path, e: impl fmt::Display) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(Error::Numerical {
                message,
                last_good_iteration,
            }) => {
                write!(f, "numerical failure: {message}")?;
                match last_good_iteration {
                    Some(k) => write!(f, "; last good iteration {k}"),
                    None => write!(f, "; no good iteration"),
                }
            }
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
