//! File formats, run configuration and command implementations behind the
//! `flexmove` binary.

pub mod commands;
pub mod config;
pub mod io;

use std::path::PathBuf;

use thiserror::Error;

pub use config::{ConfigError, Settings};
pub use io::TraceError;

/// Anything a command can fail with.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] flexmove_core::Error),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    /// 1 for I/O failures, 2 for validation failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Output(_) => 1,
            CliError::Config(e) if e.is_io() => 1,
            CliError::Trace(e) if e.is_io() => 1,
            _ => 2,
        }
    }
}
