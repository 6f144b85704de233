use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    /// The input set is not downward closed under containment.
    #[error("structural error: {0}")]
    Structure(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An extension vector was built against a different candidate list.
    #[error("stale extension vector: {0}")]
    Stale(String),
    #[error("malformed file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
