use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor must be a positive integer")]
    ZeroConductor,

    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("unknown ADE label `{0}`")]
    UnknownLabel(String),

    #[error("D_n requires n ≥ 4 (got D{0})")]
    DynkinTooSmall(u32),

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("Cayley table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("group has no 2-dimensional matrix representation")]
    NoMatrixRep,

    #[error("invalid generator matrix: {0}")]
    InvalidGenerator(String),

    #[error("character table construction failed: {0}")]
    CharacterTable(String),

    #[error("not affine ADE: {0}")]
    NotAffineAde(String),

    #[error("McKay graph adjacency {mult} between nontrivial irreps {a} and {b} exceeds 1")]
    AdjacencyTooLarge { a: usize, b: usize, mult: i64 },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("{path}: {message}")]
    Config { path: String, message: String },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
