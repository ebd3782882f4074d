//! Exact computer algebra over prime fields for quadric surface bundles over
//! projective 3-space, their sextic discriminant surfaces, and the nodal
//! double solids branched along them.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactalg`]: prime fields, dense univariate polynomials, dense matrices.
//! - [`multipoly`]: sparse multivariate polynomials with monomial orders.
//! - [`groebner`]: Buchberger completion and zero-dimensional ideal tools.
//! - [`bundle`]: the cubic fivefold data, Gram matrix and discriminant.
//! - [`singular`]: node census of the discriminant and of the double solid.
//! - [`fibers`]: fiber sampling, rank checks and the pairing certificate.
//!
//! Everything is exact; there is no floating point anywhere. All randomness
//! flows from explicit 64-bit seeds through [`rng::Prng`].

pub mod bundle;
pub mod error;
pub mod exactalg;
pub mod fibers;
pub mod groebner;
pub mod multipoly;
pub mod rng;
pub mod singular;

pub use error::{Error, Result};
