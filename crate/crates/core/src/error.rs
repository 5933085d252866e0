use thiserror::Error;

use crate::group::Family;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid group element: {0}")]
    InvalidElement(String),
    #[error("matrix is not in the Lie algebra (residual {residual:e})")]
    NotInLieAlgebra { residual: f64 },
    #[error("group descriptors do not match")]
    DescriptorMismatch,
    #[error("invalid genus {0}; expected a positive integer")]
    InvalidGenus(usize),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("genus mismatch: expected {expected}, found {found}")]
    GenusMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("surface relator violated: residual {residual:e} exceeds tolerance {tol:e}")]
    RelatorViolated { residual: f64, tol: f64 },
    #[error("representation is not Schottky")]
    NotSchottky,
    #[error("representation is not strict Schottky")]
    NotStrictSchottky,
    #[error("representation is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("representation is not good")]
    NotGood,
    #[error("cocycle condition violated: relator residual {residual:e}")]
    NotACocycle { residual: f64 },
    #[error("irreducibility test unsupported for {family}; stabilizer dim {lie_dim}, center dim {center_dim}")]
    UnsupportedIrreducibility { family: Family, lie_dim: usize, center_dim: usize },
    #[error("no good representation found after {attempts} attempts")]
    GenerationFailed { attempts: usize },
    #[error("not a PSL representation: relator product is not a central root of unity (residual {residual:e})")]
    NotPslRepresentation { residual: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
