//! Library side of the `qimg` command-line tool: input loading, report
//! assembly and table regeneration. `main.rs` only parses flags.

use std::path::PathBuf;

use thiserror::Error;

pub mod run;
pub mod tables;

/// Version tag of every JSON document the tool emits.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 2 for rejected input, 3 for I/O failures, 4 for internal faults.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<qimg_core::Error> for CliError {
    fn from(e: qimg_core::Error) -> Self {
        match e {
            qimg_core::Error::ZeroProbability => CliError::Internal(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Internal(e.to_string()))
}
