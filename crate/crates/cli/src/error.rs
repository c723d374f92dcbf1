use std::path::PathBuf;

use spbw_core::SpbwError;

use crate::dsl::Diagnostic;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {diag}")]
    Parse { path: String, diag: Diagnostic },
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] SpbwError),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("report serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit status for the error; every error is a parse or configuration problem.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
