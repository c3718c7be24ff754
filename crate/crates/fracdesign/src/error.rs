use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] fracdesign_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("design table: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("space spec: {0}")]
    Spec(String),
    #[error("design table: {0}")]
    Table(String),
    #[error("{0}")]
    Infeasible(String),
}

impl Error {
    /// 2 for tasks that are well-formed but cannot be carried out, 1 for
    /// everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Infeasible(_) | Error::Core(fracdesign_core::Error::IncompatibleSize { .. }) => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
