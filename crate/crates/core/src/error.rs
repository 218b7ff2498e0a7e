use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("subspaces live in different ambient spaces ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("tensor space of dimension {estimate} exceeds the size cap {cap}")]
    CapExceeded { estimate: usize, cap: usize },
    #[error("PBW product of degree {needed} exceeds the truncation bound {bound}")]
    Truncation { needed: usize, bound: usize },
    #[error("convention check failed: {0}")]
    Convention(String),
}

pub type Result<T> = std::result::Result<T, Error>;
