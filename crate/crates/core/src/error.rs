use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeiError {
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not planar")]
    NotPlanar,
    #[error("graph is not connected")]
    Disconnected,
    #[error("more than {0} embeddings")]
    TooManyEmbeddings(usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid rotation system: {0}")]
    BadRotation(String),
}
