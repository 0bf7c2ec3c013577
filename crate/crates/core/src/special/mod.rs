//! The small set of special functions and quadrature rules the coherent
//! constructions rest on. Everything is implemented from scratch against
//! frozen reference values so the rest of the crate has no external numeric
//! dependencies to trust blindly.

mod bessel;
mod gamma;
mod hyper;
mod quad;

pub use bessel::{bessel_i, bessel_k};
pub use gamma::{gamma, log_gamma};
pub use hyper::{hyper0f1, hyper0f1_complex};
pub use quad::{gauss_legendre, integrate, DomainMap, QuadratureSpec};
