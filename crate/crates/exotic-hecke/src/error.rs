use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("unknown root index {0}")]
    UnknownRoot(usize),
    #[error("invalid parameter function: {0}")]
    InvalidParameters(String),
    #[error("elements belong to different Hecke contexts")]
    MismatchedContext,
    #[error("zero value assigned to parameter {0}")]
    ZeroParameter(String),
    #[error("invalid central character: {0}")]
    InvalidCharacter(String),
    #[error("character cannot be specialized to rationals: {0}")]
    NotRational(String),
    #[error("quotient ring has dimension {found}, expected {expected}")]
    QuotientDimension { found: usize, expected: usize },
    #[error("algebra is not associative: {0}")]
    NonAssociative(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("vector is not supported on the Borel weights")]
    NotInBorelPart,
    #[error("orbit finiteness not established (verdict {0})")]
    NotFinite(String),
    #[error("fixed space of dimension {0} is too large to enumerate over this field")]
    EnumerationBound(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
