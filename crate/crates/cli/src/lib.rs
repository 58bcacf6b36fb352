//! Library side of the `leibenson` command line tool: configuration
//! parsing, model construction from a config, and the five commands.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod format;

use std::fmt;

pub use config::{ConfigError, RunConfig};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT_ERROR: i32 = 1;
    pub const NEGATIVE_VERDICT: i32 = 2;
    pub const NO_EXTINCTION: i32 = 3;
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Library(leibenson::Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(e) => write!(f, "config error: {e}"),
            Self::Library(e) => write!(f, "{e}"),
            Self::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        Self::Config(e)
    }
}

impl From<leibenson::Error> for CliError {
    fn from(e: leibenson::Error) -> Self {
        Self::Library(e)
    }
}

/// A finished command: the human-readable report and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}
