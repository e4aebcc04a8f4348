use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown row label `{0}`")]
    UnknownRow(String),
    #[error("unknown column label `{0}`")]
    UnknownColumn(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("value {0} has no image in {1}")]
    NotInField(String, String),
    #[error("unknown field `{0}`")]
    UnknownField(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("size {got} exceeds the bound {bound}")]
    TooLarge { got: usize, bound: usize },
    #[error("budget must be positive")]
    ZeroBudget,
    #[error("unknown named graph `{0}`")]
    UnknownGraph(String),
    #[error("graph has loops; a simple graph is required")]
    HasLoops,

    #[error("malformed double occurrence word: {0}")]
    BadWord(String),
    #[error("invalid structure: {0}")]
    Structure(String),
    #[error("walk is not a closed trail: {0}")]
    BadWalk(String),
    #[error("base edges invalid: {0}")]
    BadBase(String),
    #[error("fundamental circuits are not consistently oriented at `{0}`")]
    Inconsistent(String),

    #[error("not a subtransversal: {0}")]
    NotSubtransversal(String),
    #[error("not a circle graph")]
    NotCircle,
    #[error("no realization found within bounds")]
    NoRealization,
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
