use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] sextic_core::Error),
}

impl CliError {
    /// All errors are exit class 2; verified failures are reported, not raised.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
