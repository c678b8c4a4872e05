use thiserror::Error;

use crate::set::ElementSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which side of a table a reproduction/division witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Line {
    Row,
    Column,
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Line::Row => f.write_str("row"),
            Line::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("carrier mismatch: expected order {expected}, found {found}")]
    CarrierMismatch { expected: usize, found: usize },

    #[error("empty cell at ({row}, {col})")]
    EmptyCell { row: usize, col: usize },

    #[error("unknown element {label:?} at {location}")]
    UnknownElement { label: String, location: String },

    #[error("duplicate element name {0:?}")]
    DuplicateName(String),

    #[error("carrier must be non-empty")]
    EmptyCarrier,

    #[error("order {0} exceeds the supported maximum of 64")]
    OrderTooLarge(usize),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("not divisible: {line} {element} is missing {missing}")]
    NotDivisible {
        element: usize,
        line: Line,
        missing: ElementSet,
    },

    #[error("cell ({row}, {col}) is not a singleton")]
    NotClassical { row: usize, col: usize },

    #[error("element {0} has no inverse")]
    NoInverse(usize),

    #[error("element {element} has several inverse candidates {candidates}")]
    AmbiguousInverse {
        element: usize,
        candidates: ElementSet,
    },

    #[error("order {order} exceeds the brute-force cap {cap}")]
    BudgetExceeded { order: usize, cap: usize },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("invalid search spec: {0}")]
    InvalidSpec(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Internal invariant violations map to a distinct CLI exit status.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
