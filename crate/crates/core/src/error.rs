use thiserror::Error;

/// Errors raised by the lattice, ring and decision layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("grading is not pointed; an explicit bound is required")]
    NeedsBound,
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("rays span a sublattice of rank {rank} in dimension {dim} (torus factor)")]
    TorusFactor { rank: usize, dim: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
