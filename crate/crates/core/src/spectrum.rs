//! Quadratic level spectra and their truncated Fock-space operators.
//!
//! The systems handled by this crate have eigenvalues `e_n = a*n^2 + b*n` with
//! `a >= 0`, `b > 0`, so `e_0 = 0` and the sequence is strictly increasing. The
//! ladder operators carry amplitudes `sqrt(e_n)`:
//!
//! ```text
//! raise |n> = sqrt(e_{n+1}) |n+1>        lower |n> = sqrt(e_n) |n-1>
//! ```
//!
//! On the truncated space of dimension `D` the product `raise * lower` equals
//! `diag(e_0, ..., e_{D-1})` exactly, while `lower * raise` is wrong only in its
//! last diagonal entry (the amplitude to level `D` is cut off). Consequently the
//! commutator `[lower, raise]` matches the analytic level-gap diagonal
//! `e_{n+1} - e_n` on the top-left `(D-1) x (D-1)` block, and identities that
//! involve it are asserted on that block only.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients of the spectrum `e_n = a*n^2 + b*n`.
///
/// `a = 0` is the harmonic (equally spaced) case; several constructions
/// degenerate there and the crate handles that branch explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumParams {
    a: f64,
    b: f64,
}

impl SpectrumParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a < 0.0 || b <= 0.0 {
            return Err(Error::InvalidSpectrum { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// The ratio `r = b/a` that indexes the coherent families; `None` in the
    /// harmonic case.
    pub fn level_ratio(&self) -> Option<f64> {
        (self.a > 0.0).then(|| self.b / self.a)
    }

    pub fn is_harmonic(&self) -> bool {
        self.a == 0.0
    }

    pub fn energy(&self, n: usize) -> f64 {
        let n = n as f64;
        self.a * n * n + self.b * n
    }

    /// Gap `e_{n+1} - e_n = 2an + a + b` above level `n`.
    pub fn gap(&self, n: usize) -> f64 {
        2.0 * self.a * n as f64 + self.a + self.b
    }

    /// `ln(e_1 e_2 ... e_n)`; the products themselves overflow near n = 150,
    /// so internal formulas work with the logarithm.
    pub(crate) fn log_energy_product(&self, n: usize) -> f64 {
        (1..=n).map(|k| self.energy(k).ln()).sum()
    }
}

/// A truncated Fock space: the span of the first `dim` number states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// A dense operator on a truncated Fock space.
///
/// Binary arithmetic (`+`, `-`, `*` on references) panics if the operands live
/// on spaces of different dimension; mixing spaces is a programming error, not
/// a runtime condition. Expectation values against state vectors go through
/// [`crate::coherent::CoherentVector::expectation`], which reports mismatches
/// as errors instead.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    dim: usize,
    mat: Array2<Complex64>,
}

impl FockOperator {
    /// The raising operator: `sqrt(e_{n+1})` on the first subdiagonal.
    pub fn raising(params: &SpectrumParams, space: FockSpace) -> Self {
        let d = space.dim();
        let mut mat = Array2::zeros((d, d));
        for n in 0..d - 1 {
            mat[[n + 1, n]] = Complex64::new(params.energy(n + 1).sqrt(), 0.0);
        }
        Self { dim: d, mat }
    }

    /// The lowering operator, adjoint of [`FockOperator::raising`].
    pub fn lowering(params: &SpectrumParams, space: FockSpace) -> Self {
        Self::raising(params, space).adjoint()
    }

    /// `diag(0, 1, ..., dim-1)`.
    pub fn number(space: FockSpace) -> Self {
        Self::diagonal(space, |n| n as f64)
    }

    /// `diag(e_0, ..., e_{dim-1})`; equals `raising * lowering` exactly on the
    /// truncated space.
    pub fn hamiltonian(params: &SpectrumParams, space: FockSpace) -> Self {
        Self::diagonal(space, |n| params.energy(n))
    }

    /// The analytic level-gap diagonal `diag(e_{n+1} - e_n)`. The truncated
    /// commutator `[lowering, raising]` reproduces it on the top-left
    /// `(dim-1) x (dim-1)` block; the last diagonal entry of the commutator is
    /// `-e_{dim-1}` instead.
    pub fn level_gap(params: &SpectrumParams, space: FockSpace) -> Self {
        Self::diagonal(space, |n| params.gap(n))
    }

    pub fn identity(space: FockSpace) -> Self {
        Self::diagonal(space, |_| 1.0)
    }

    /// Real diagonal operator with entries `f(n)`.
    pub fn diagonal(space: FockSpace, f: impl Fn(usize) -> f64) -> Self {
        let d = space.dim();
        let mut mat = Array2::zeros((d, d));
        for n in 0..d {
            mat[[n, n]] = Complex64::new(f(n), 0.0);
        }
        Self { dim: d, mat }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[[row, col]]
    }

    pub fn adjoint(&self) -> Self {
        let mut mat = Array2::zeros((self.dim, self.dim));
        for i in 0..self.dim {
            for j in 0..self.dim {
                mat[[i, j]] = self.mat[[j, i]].conj();
            }
        }
        Self { dim: self.dim, mat }
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(&(self * other) - &(other * self))
    }

    pub fn apply(&self, v: &Array1<Complex64>) -> Result<Array1<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok(self.mat.dot(v))
    }

    /// Largest absolute entry of `self - other` over the top-left
    /// `block x block` square. Identities affected by the truncation edge are
    /// compared this way.
    pub fn block_distance(&self, other: &Self, block: usize) -> f64 {
        assert_eq!(self.dim, other.dim, "operators live on different spaces");
        let block = block.min(self.dim);
        let mut worst = 0.0f64;
        for i in 0..block {
            for j in 0..block {
                worst = worst.max((self.mat[[i, j]] - other.mat[[i, j]]).norm());
            }
        }
        worst
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            mat: self.mat.mapv(|x| c * x),
        }
    }
}

impl std::ops::Mul for &FockOperator {
    type Output = FockOperator;

    fn mul(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.dim, rhs.dim, "operators live on different spaces");
        FockOperator {
            dim: self.dim,
            mat: self.mat.dot(&rhs.mat),
        }
    }
}

impl std::ops::Add for &FockOperator {
    type Output = FockOperator;

    fn add(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.dim, rhs.dim, "operators live on different spaces");
        FockOperator {
            dim: self.dim,
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl std::ops::Sub for &FockOperator {
    type Output = FockOperator;

    fn sub(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.dim, rhs.dim, "operators live on different spaces");
        FockOperator {
            dim: self.dim,
            mat: &self.mat - &rhs.mat,
        }
    }
}

/// A letter of a ladder word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    Raise,
    Lower,
}

/// A complex linear combination of ladder words, e.g. `2*RL - i*LLR`.
///
/// Words multiply left to right: the word `[Raise, Lower]` compiles to
/// `raising * lowering`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorExpr {
    terms: Vec<(Complex64, Vec<Letter>)>,
}

impl OperatorExpr {
    pub fn new(terms: Vec<(Complex64, Vec<Letter>)>) -> Self {
        Self { terms }
    }

    /// Single-word expression.
    pub fn word(coeff: Complex64, letters: Vec<Letter>) -> Self {
        Self {
            terms: vec![(coeff, letters)],
        }
    }

    pub fn terms(&self) -> &[(Complex64, Vec<Letter>)] {
        &self.terms
    }

    pub fn compile(&self, params: &SpectrumParams, space: FockSpace) -> FockOperator {
        let raise = FockOperator::raising(params, space);
        let lower = FockOperator::lowering(params, space);
        let mut acc = FockOperator::identity(space).scale(Complex64::new(0.0, 0.0));
        for (coeff, word) in &self.terms {
            let mut prod = FockOperator::identity(space);
            for letter in word {
                prod = match letter {
                    Letter::Raise => &prod * &raise,
                    Letter::Lower => &prod * &lower,
                };
            }
            acc = &acc + &prod.scale(*coeff);
        }
        acc
    }
}
