//! File formats and subcommands of the `minorflow` tool.

pub mod commands;
pub mod dimacs;
pub mod flowfile;
pub mod treefile;

pub use commands::{run, Cli, CliError, Command};

use thiserror::Error;

/// A malformed input line.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}
