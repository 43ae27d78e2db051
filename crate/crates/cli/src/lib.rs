//! Library half of the `weakwreath` command line tool: file formats,
//! report types and the command implementations. The binary in `main.rs`
//! only parses arguments and prints.

pub mod commands;
pub mod format;
pub mod report;

use thiserror::Error;

/// Input-side failures: anything that prevents a command from computing.
/// Mathematical failures are not errors; they are reports with failing
/// checks (exit code 1). These exit with code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> CliError {
        CliError::Input(msg.into())
    }
}
