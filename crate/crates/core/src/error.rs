use thiserror::Error;

use crate::table::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} out of range for universe of size {k}")]
    ElementOutOfRange { element: Element, k: usize },

    #[error("expected a tuple of length {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("arity {0} is not supported (must be at least 2)")]
    ArityTooSmall(usize),

    #[error("universe size {0} is not supported (must be between 1 and 64)")]
    UniverseSize(usize),

    #[error("empty subset where a non-empty subset is required")]
    EmptySubset,

    #[error("invalid table entry at flat index {flat_index} (tuple {tuple:?}): {reason}")]
    InvalidEntry {
        flat_index: usize,
        tuple: Vec<Element>,
        reason: String,
    },

    #[error("{0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{what} needs {needed} candidates, above the cap of {cap}; raise the cap explicitly")]
    ResourceCap { what: String, needed: u128, cap: u128 },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
