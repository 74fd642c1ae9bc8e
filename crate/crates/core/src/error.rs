use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("element is not a unit")]
    NotUnit,
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("missing action of base generator `{base}` on `{fiber}`")]
    MissingAction { fiber: String, base: String },
    #[error("no weight given for generator `{0}`")]
    UncoveredGenerator(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("value does not fit: {0}")]
    Overflow(String),
    /// A computed certificate failed its own check. Always a bug.
    #[error("internal verification failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
