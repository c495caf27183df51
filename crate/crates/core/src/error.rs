use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("indecomposable {0} does not belong to this quiver")]
    ForeignIndec(usize),
    #[error("not a module: {0}")]
    InvalidModule(String),
    #[error("quiver is not special")]
    NotSpecial,
    #[error("quiver is not cospecial")]
    NotCospecial,
    #[error("module is not an element of B(lambda): {0}")]
    NotInCrystal(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("node cap of {0} exceeded")]
    NodeCap(usize),
    #[error("graph error: {0}")]
    Graph(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
