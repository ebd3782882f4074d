//! Sparse multivariate polynomials over F_p.
//!
//! A [`MultiPoly`] keeps its terms strictly decreasing in its
//! [`MonomialOrder`], with no zero coefficients, so structural equality is
//! ideal-theoretic equality of polynomials.

mod det;
mod monomial;
mod poly;
mod text;

pub use det::{det, minor, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::MultiPoly;
pub use text::{parse_poly, variable_names};
