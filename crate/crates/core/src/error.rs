use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("dimension mismatch: {0}")]
    Mismatch(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("zero divisor: {0}")]
    ZeroDivisor(String),
    #[error("undecidable at D={0}: {1}")]
    Undecidable(usize, String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
