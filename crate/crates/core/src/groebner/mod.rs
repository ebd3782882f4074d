//! Gröbner bases over F_p and zero-dimensional ideal tools.
//!
//! [`buchberger`] completes an [`IdealPresentation`] to its reduced Gröbner
//! basis using the Gebauer–Möller installation of the product and chain
//! criteria. A [`GBasis`] then answers membership, dimension and quotient
//! questions combinatorially from its leading monomials.

mod buchberger;
mod ideal;
mod reduce;

pub use buchberger::{buchberger, GbOptions, Selection, DEFAULT_BUDGET};
pub use ideal::{in_radical, is_irrelevant, GBasis, IdealPresentation};
