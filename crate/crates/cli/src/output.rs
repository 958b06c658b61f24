use std::fs;
use std::io::{self, Write};
use std::path::Path;

use seqspan_core::Error;

/// Failure classes, each with its own exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Invalid parameters, or a request refused by a size guardrail.
    #[error("{0}")]
    Validation(String),
    /// A verification assertion did not hold.
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Io(String),
    /// An input file could not be parsed.
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Failed(_) => 3,
            CliError::Io(_) => 4,
            CliError::Malformed(_) => 5,
            CliError::Internal(_) => 70,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Failed(_) => "assertion",
            CliError::Io(_) => "io",
            CliError::Malformed(_) => "malformed-input",
            CliError::Internal(_) => "internal",
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => CliError::Malformed(e.to_string()),
            Error::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}
