use std::fmt;
use std::io;
use std::process::ExitCode;

/// Failure of a subcommand, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid arguments. Exit code 2, matching argument-parser errors.
    Usage(String),
    /// Malformed portfolio file. Exit code 3.
    Parse(String),
    /// A numerical routine failed. Exit code 4.
    Numeric(String),
    /// Monte Carlo estimate disagrees with quadrature. Exit code 5.
    McDisagreement(String),
    /// A regenerated table deviates beyond its tolerance. Exit code 6.
    TableDiff(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::McDisagreement(_) => 5,
            CliError::TableDiff(_) => 6,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
            CliError::McDisagreement(m) => write!(f, "Monte Carlo disagreement: {m}"),
            CliError::TableDiff(m) => write!(f, "table mismatch: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<lowpd::Error> for CliError {
    fn from(e: lowpd::Error) -> Self {
        if e.is_domain() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Numeric(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(e) => CliError::Io(e),
            other => CliError::Parse(format!("{other:?}")),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
