//! Exact arithmetic kernel: prime fields, dense univariate polynomials and
//! dense matrices over a prime field.

mod field;
mod matrix;
mod upoly;

pub use field::{is_prime, FpElement, PrimeField, DEFAULT_PRIME};
pub use matrix::FpMatrix;
pub use upoly::UPoly;
