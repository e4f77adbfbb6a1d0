//! Exact linear algebra over the Gaussian rationals ℚ(i).
//!
//! Subspaces are identified by their reduced row echelon bases, so lattice
//! questions about them (containment, equality of meets) are decided exactly.

mod closure;
mod scalar;
mod subspace;
mod tensor;

use thiserror::Error;

use crate::lattice::LatticeError;

pub use closure::{
    element_name, parse_vector, subspace_closure, subspace_lattice_closure, RationalRepr, RaySeed, RaySeedFile, ScalarRepr,
    SubspaceFragment, DEFAULT_CLOSURE_CAP,
};
pub use scalar::{parse_rational, GaussianRational};
pub use subspace::{
    basis_vector, fmt_vector, inner, int_vector, kernel, rank, rref, ExactVector, Subspace,
    SubspaceLattice,
};
pub use tensor::{lift_first, lift_second, schmidt_rank, tensor_subspace, tensor_vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector where a ray was required")]
    ZeroVector,
    #[error("ambient dimension must be positive")]
    ZeroDimension,
    #[error("closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
