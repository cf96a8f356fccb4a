use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("the fan is degenerate: its rays do not span the ambient space")]
    DegenerateFan,
    #[error("cone {0} is not simplicial")]
    NonSimplicial(usize),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
