//! Library side of the `azbk` binary: argument-independent command
//! implementations, output documents and renderers.

pub mod commands;
pub mod doc;
pub mod oracle;
pub mod render;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] azbk_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit status: every error here is a usage or input problem.
    /// Verification failures are reported through a normal output instead.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
