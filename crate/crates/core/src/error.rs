use thiserror::Error;

/// Group axiom violated by a Cayley table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Shape,
    Range,
    LatinRow,
    LatinColumn,
    Identity,
    Inverse,
    Associativity,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {axiom:?} fails at {witness:?}")]
    NotAGroup { axiom: Axiom, witness: (usize, usize, usize) },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("order bound exceeded: {what} needs {needed}, limit is {limit}")]
    OrderBound { what: &'static str, needed: u128, limit: u128 },
    #[error("unknown group spec {spec:?}{}", suggestion.as_ref().map(|s| format!(" (did you mean {s:?}?)")).unwrap_or_default())]
    UnknownSpec { spec: String, suggestion: Option<String> },
    #[error("subset is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {h} conjugated by {g} leaves it")]
    NotNormal { h: usize, g: usize },
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound constant {0:?}")]
    UnboundConstant(String),
    #[error("arity mismatch: word needs {needed} variables, got {given}")]
    ArityMismatch { needed: usize, given: usize },
    #[error("not a supercommutator: {0}")]
    NotASupercommutator(String),
    #[error("supercommutator has no variable from the designated tuple")]
    NoXVariable,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("lhs is not a product of supercommutators: {0}")]
    NotAProductOfSupercommutators(String),
    #[error("subset is empty; no cover exists")]
    EmptySubset,
    #[error("search budget of {0} nodes exceeded")]
    Budget(u64),
    #[error("index bound exceeded: {needed} entries, limit {limit}")]
    IndexBound { needed: u128, limit: u128 },
    #[error("automorphism action is not closed on the group")]
    ActionNotClosed,
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("unknown question {0:?}")]
    UnknownQuestion(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
