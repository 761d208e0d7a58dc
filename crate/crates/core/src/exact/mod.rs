//! Exact arithmetic underpinning the symbolic side of the crate.
//!
//! Coefficients are arbitrary-precision rationals; polynomials are sparse maps
//! from exponents to nonzero coefficients, so structural equality is
//! mathematical equality.

mod matrix;
mod poly1;
mod poly3;
mod rational;

pub use matrix::RationalMatrix;
pub use poly1::Poly1;
pub use poly3::{compose_affine, Poly3};
pub use rational::{parse_rational, rat, rational_to_f64, Rational};
