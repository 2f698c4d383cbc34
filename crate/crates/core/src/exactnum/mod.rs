//! Exact scalar and polynomial arithmetic.
//!
//! Everything downstream works over the Gaussian rationals `ℚ(i)`. Rationals
//! are [`num_rational::BigRational`], which is always kept in lowest terms
//! with a positive denominator.

mod gaussian;
mod poly;
pub mod rational;

pub use gaussian::{GaussianOp, GaussianRational};
pub use poly::RationalPolynomial;
pub use rational::{bit_size, parse_rational, Rational};
