use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("length mismatch: d = {d} but {found} components")]
    LengthMismatch { d: u64, found: usize },
    #[error("invariant `{name}` violated: {detail}")]
    Invariant { name: &'static str, detail: String },
    #[error("{0}")]
    Core(flatsic_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl From<flatsic_core::Error> for Error {
    fn from(e: flatsic_core::Error) -> Self {
        match e {
            flatsic_core::Error::InvariantViolation { name, detail } => {
                Error::Invariant { name, detail }
            }
            other => Error::Core(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
