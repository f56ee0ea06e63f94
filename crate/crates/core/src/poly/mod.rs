//! Exact arithmetic with homogeneous polynomials in three variables over
//! a prime field.

pub mod bivariate;
pub mod field;
pub mod hompoly;
pub mod univariate;

pub use field::{is_prime, PrimeField, DEFAULT_PRIME, SECOND_PRIME};
pub use hompoly::{gcd3, normalize_triple, Exponent, Form, HomPoly3};
