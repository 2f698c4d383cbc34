//! Exact inertia of Hermitian matrices over `ℚ(i)`, the rank-≤2 determinantal
//! strata and their cones with vertex at the identity, the degree and parity
//! of the rank-≤2 determinantal locus, lower bounds for the Hodge number
//! `h^{1,1}` of irregular surfaces, and a randomized falsifier for subspaces
//! of Hermitian matrices whose nonzero elements all have minimal inertia ≥ 2.

pub mod bounds;
pub mod degree;
pub mod error;
pub mod exactnum;
pub mod hermitian;
pub mod random;
pub mod search;
pub mod selfcheck;
pub mod strata;

pub use error::{Error, Result};
pub use exactnum::{GaussianRational, Rational, RationalPolynomial};
pub use hermitian::{inertia, minimal_inertia, rank, HermitianMatrix, Inertia};
