use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("basis columns are linearly dependent (rank {rank} of {cols})")]
    DependentColumns { rank: usize, cols: usize },
    #[error("zero vector not allowed: {0}")]
    ZeroVector(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("polynomial has a root at interval endpoint {0}")]
    RootAtEndpoint(String),
}
