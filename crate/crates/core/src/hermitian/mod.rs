//! Hermitian matrices over `ℚ(i)` and their exact inertia.

mod charpoly;
mod inertia;
mod matrix;

pub use charpoly::{characteristic_polynomial, descartes_inertia};
pub use inertia::{congruence_transform, inertia, minimal_inertia, rank, Inertia};
pub use matrix::{rational_rank, EchelonForm, GaussianMatrix, HermitianMatrix, MatrixJson};
