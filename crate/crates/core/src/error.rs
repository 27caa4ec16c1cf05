use thiserror::Error;

/// Errors raised while building or combining the finite structures in this crate.
///
/// Axiom failures are not errors: checkers return reports. These variants are
/// reserved for malformed input and for calls whose preconditions do not hold.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("unknown group fixture `{0}`")]
    UnknownGroup(String),
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("mismatched endpoints: {0}")]
    Mismatch(String),
    #[error("not an orbit: {0}")]
    NotAnOrbit(String),
    #[error("malformed operad data: {0}")]
    Malformed(String),
    #[error("not closed under composition or identities: {0}")]
    NotClosed(String),
    #[error("invalid indexing data: {0}")]
    InvalidIndexing(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
