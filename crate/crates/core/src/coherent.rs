//! Common state-vector type shared by the two coherent families.

use ndarray::Array1;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::FockOperator;

/// Which coherent construction a vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Temporally stable family labelled by a point of the plane.
    Gk,
    /// Group-orbit family labelled by a point of the open unit disc.
    Pk,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Gk => "gk",
            Family::Pk => "pk",
        })
    }
}

/// A normalized coherent state expanded over the truncated number basis.
///
/// `tail_mass` is the weight `1 - sum |c_n|^2` the truncation discarded: the
/// coefficients are normalized against the analytic (infinite-dimensional)
/// normalization constant, so the stored vector has norm slightly below one
/// and `tail_mass` measures how much the truncation actually lost.
#[derive(Debug, Clone)]
pub struct CoherentVector {
    family: Family,
    label: Complex64,
    coeffs: Array1<Complex64>,
    tail_mass: f64,
}

impl CoherentVector {
    pub(crate) fn new(family: Family, label: Complex64, coeffs: Array1<Complex64>) -> Self {
        let norm_sqr: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        Self {
            family,
            label,
            coeffs,
            tail_mass: (1.0 - norm_sqr).max(0.0),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The label the state was built from: a plane point for the temporally
    /// stable family, a disc point for the orbit family.
    pub fn label(&self) -> Complex64 {
        self.label
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &Array1<Complex64> {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs[n]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// `<self| op |self>`.
    pub fn expectation(&self, op: &FockOperator) -> Result<Complex64> {
        self.matrix_element(op, self)
    }

    /// `<self| op |other>`.
    pub fn matrix_element(&self, op: &FockOperator, other: &CoherentVector) -> Result<Complex64> {
        if op.dim() != self.dim() || op.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: op.dim(),
                right: self.dim().max(other.dim()),
            });
        }
        let applied = op.apply(&other.coeffs)?;
        Ok(self
            .coeffs
            .iter()
            .zip(applied.iter())
            .map(|(bra, v)| bra.conj() * v)
            .sum())
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &CoherentVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(bra, v)| bra.conj() * v)
            .sum())
    }
}
