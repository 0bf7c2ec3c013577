//! Coherent-state deformation quantization for quadratic spectra.
//!
//! Everything here is organized around the spectrum `e_n = a*n^2 + b*n` on a
//! truncated Fock space: ladder operators with amplitudes `sqrt(e_n)`, two
//! coherent families built on them (a temporally stable family labelled by a
//! point of the plane and a group-orbit family labelled by a point of the unit
//! disc), operator symbols `A(z) = <z|A|z>`, and the induced star product and
//! Moyal bracket. The [`star`] module ships a validation suite that checks
//! every closed-form identity the crate implements against an independent
//! matrix-side oracle and reports, per identity, the residual of the published
//! closed form next to the residual of the corrected form where the two
//! differ.

pub mod coherent;
pub mod error;
pub mod gk;
pub mod pk;
pub mod special;
pub mod spectrum;
pub mod star;

pub use error::{Error, Result};
pub use spectrum::{FockOperator, FockSpace, Letter, OperatorExpr, SpectrumParams};
