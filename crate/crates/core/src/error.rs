use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series must have zero constant term")]
    NonzeroConstant,
    #[error("series must have nonzero linear term")]
    ZeroLinearTerm,
    #[error("series must have constant term {expected}")]
    BadConstantTerm { expected: &'static str },
    #[error("coefficient index {index} exceeds truncation order {order}")]
    IndexBeyondOrder { index: usize, order: usize },

    #[error("invalid index set: {0}")]
    InvalidSet(String),
    #[error("cannot parse index set {input:?}: {reason}")]
    SetParse { input: String, reason: String },
    #[error("{element} is not an element of {set}")]
    NotAnElement { element: u64, set: String },

    #[error("expected an integer, got {value} ({context})")]
    NotIntegral { value: String, context: String },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("requires 1 in S: {0}")]
    RequiresOne(String),

    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("zero diagonal entry in row {row}")]
    ZeroDiagonal { row: usize },
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("invalid Riordan pair: {0}")]
    InvalidPair(String),

    #[error("{what} = {value} exceeds the enumeration guard {limit}")]
    GuardExceeded { what: &'static str, value: usize, limit: usize },
    #[error("{set} is not a +1-monoid: {detail}")]
    NotMonoid { set: String, detail: String },
    #[error("{set} is a +1-monoid only up to bound {bound}; pass an explicit override")]
    MonoidUnverified { set: String, bound: u64 },
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("element {x} is not below element {y}")]
    NotComparable { x: usize, y: usize },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}
