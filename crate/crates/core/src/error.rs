use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Semantic(String),

    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("monoid size cap exceeded (more than {cap} elements)")]
    MonoidCap { cap: usize },

    #[error("automaton state cap exceeded (more than {cap} states)")]
    StateCap { cap: usize },

    #[error("element {0} is not idempotent")]
    NotIdempotent(String),

    #[error("operation requires an ordered monoid")]
    MissingOrder,

    #[error("{0} is not a stability index of the morphism")]
    NotStabilityIndex(usize),

    #[error("syntactic preorder is not antisymmetric: {0} and {1} are indistinguishable")]
    NotSyntactic(String, String),

    #[error("unknown fragment `{0}`")]
    UnknownFragment(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid expression: {0}")]
    InvalidExpression(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by a resource cap rather than by bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::MonoidCap { .. } | Error::StateCap { .. })
    }

    pub(crate) fn semantic(msg: impl Into<String>) -> Self {
        Error::Semantic(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
