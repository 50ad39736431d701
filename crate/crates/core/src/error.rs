use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed element: {0}")]
    MalformedElement(String),

    #[error("malformed group presentation: {0}")]
    MalformedGroup(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("invalid prime {p} for group `{name}`: {reason}")]
    InvalidPrime {
        name: String,
        p: u32,
        reason: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("group of order {order} exceeds the limit of {limit} for this operation")]
    TooLarge { order: usize, limit: usize },

    #[error("checkpoint mismatch: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
