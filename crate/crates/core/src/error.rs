use thiserror::Error;

use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element `{0}`")]
    UnknownLabel(String),
    #[error("ground set must be nonempty")]
    EmptyUniverse,
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("instance too large: limit is {limit} elements, got {actual}")]
    TooLarge { limit: usize, actual: usize },
    #[error("forcing would place `{0}` both strictly below and above `{1}`")]
    InconsistentForcing(String, String),
    #[error("preorder is not total: `{0}` and `{1}` are incomparable")]
    NotTotal(String, String),
    #[error("queried set is empty")]
    EmptySet,
    #[error("set {0:?} exceeds ground size {1}")]
    OutOfBounds(ElementSet, usize),
    #[error("ground sizes differ: {0} vs {1}")]
    GroundMismatch(usize, usize),
    #[error("subspace must be nonempty")]
    EmptySubspace,
    #[error("function is defined on {0} elements, preorder has {1}")]
    DomainMismatch(usize, usize),
    #[error("function family is empty")]
    EmptyFamily,
    #[error("preorder is not lower semicontinuous: weak lower contour of `{0}` is not closed")]
    NotLscPreorder(String),
    #[error("refinement violated: `{0}` <= `{1}` in the coarse preorder only")]
    RefinementViolated(String, String),
    #[error("premise failed: {0}")]
    PremiseFailed(String),
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid `{path}`: {reason}")]
    Validation { path: String, reason: String },
}

impl Error {
    pub(crate) fn validation(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation { path: path.into(), reason: reason.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
