use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported rank m = {m}: the simple-root system is only valid for m > 2")]
    UnsupportedRank { m: i64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("evaluation at a pole: denominator `{denominator}` vanishes")]
    Pole { denominator: String },

    #[error("relation violated: {relation} ({detail})")]
    RelationViolation { relation: String, detail: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn relation(relation: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::RelationViolation {
            relation: relation.into(),
            detail: detail.into(),
        }
    }
}
