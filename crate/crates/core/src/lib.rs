//! Exact tools for lattice-based quantum logic.
//!
//! * [`lattice`]: finite ortholattices, orthomodularity, commutation, the
//!   Piron-lattice predicates, Boolean blocks and distributive triples.
//! * [`exactlin`]: subspaces of ℚ(i)^n, tensor products, Schmidt rank and
//!   finite closures of subspace lattices.
//! * [`products`]: product conditions for lattices, entangled atoms, strong
//!   perspectivity and the no-cloning obstruction.
//! * [`correlations`]: PR-box correlations as lattice polynomials, in a
//!   Boolean host and in the two-qubit subspace lattice.
//! * [`povm`]: numeric effects and POVMs, Cabello's POVMs, sequential
//!   measurements, frames, entwinement and frame functions.
//! * [`demos`] and [`report`]: the scripted demonstrations shared by the CLI
//!   and the browser demo.

pub mod correlations;
pub mod demos;
pub mod exactlin;
pub mod lattice;
pub mod ortho;
pub mod povm;
pub mod products;
pub mod report;

pub use lattice::{Elem, FiniteOml, LatticeError};
pub use ortho::Ortholattice;
