use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] madic_core::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid group spec: {0}")]
    Spec(String),
    #[error("invalid element word: {0}")]
    Word(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("{0}")]
    Io(String),
}
