use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown symbol `{symbol}`{}", .column.map(|c| format!(" at column {c}")).unwrap_or_default())]
    UnknownSymbol { symbol: String, column: Option<usize> },
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("relation cannot be oriented: {0}")]
    NonOrientable(String),
    #[error("rewriting system is only confluent up to length {have}, but length {need} is required")]
    InsufficientBound { have: usize, need: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("axiom violated: {0}")]
    Axiom(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("point is not on the scheme: {0}")]
    NotOnScheme(String),
}

pub type Result<T> = std::result::Result<T, Error>;
