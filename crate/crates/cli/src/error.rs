use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Validation(#[from] catcoh::Error),
    #[error("cache entry {} is corrupt: {detail}", path.display())]
    CacheCorrupt { path: PathBuf, detail: String },
    #[error("cannot access {}: {detail}", path.display())]
    Io { path: PathBuf, detail: String },
}
