//! The temporally stable coherent family, labelled by a point `z` of the
//! complex plane.
//!
//! Coefficients obey `c_{n+1} = z c_n / sqrt(e_{n+1})`, so
//! `c_n = z^n / sqrt(rho_n)` with `rho_n = e_1 e_2 ... e_n`, normalized by
//! `N^2 = 0F1(r+1; |z|^2/a)` where `r = b/a` (harmonic limit:
//! `N^2 = exp(|z|^2/b)`). Time evolution only rotates the label's phase, which
//! is what makes the family temporally stable.
//!
//! The resolution of identity uses the radial weight
//!
//! ```text
//! w(x) = 2/(a Γ(r+1)) (x/a)^{r/2} K_r(2 sqrt(x/a)),
//! ```
//!
//! whose moments are exactly the energy products:
//! `∫ x^n w(x) dx = rho_n = n! Γ(n+r+1) a^n / Γ(r+1)`. Against normalized
//! states the measure reads `dμ = (1/2π) w(x) N^2(x) dx dθ` with `x = |z|^2`;
//! the `N^2` cancels the states' normalization, so the diagonal matrix
//! elements of `∫ dμ |z><z|` reduce to `moment_n / rho_n = 1` for every `n`
//! — the resolution is exact level by level, not just asymptotically.

use ndarray::Array1;
use num_complex::Complex64;

use crate::coherent::{CoherentVector, Family};
use crate::error::{Error, Result};
use crate::special::{
    bessel_k, hyper0f1, hyper0f1_complex, integrate, log_gamma, DomainMap, QuadratureSpec,
};
use crate::spectrum::{FockSpace, SpectrumParams};

/// Normalization constant squared, `N^2(|z|^2)`.
fn norm_sqr_constant(params: &SpectrumParams, x: f64) -> Result<f64> {
    match params.level_ratio() {
        Some(r) => hyper0f1(r + 1.0, x / params.a()),
        None => Ok((x / params.b()).exp()),
    }
}

/// Coherent state truncated to `space`, normalized against the analytic
/// (untruncated) constant so that `tail_mass` reports what the truncation
/// discarded.
pub fn state(params: &SpectrumParams, space: FockSpace, z: Complex64) -> Result<CoherentVector> {
    let norm = norm_sqr_constant(params, z.norm_sqr())?.sqrt();
    let mut coeffs = Array1::zeros(space.dim());
    let mut c = Complex64::new(1.0 / norm, 0.0);
    coeffs[0] = c;
    for n in 1..space.dim() {
        c *= z / params.energy(n).sqrt();
        coeffs[n] = c;
    }
    Ok(CoherentVector::new(Family::Gk, z, coeffs))
}

/// Overlap kernel `<z1|z2>` of the untruncated family, in closed form.
pub fn kernel(params: &SpectrumParams, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    let cross = z1.conj() * z2;
    match params.level_ratio() {
        Some(r) => {
            let num = hyper0f1_complex(r + 1.0, cross / params.a())?;
            let den = (norm_sqr_constant(params, z1.norm_sqr())?
                * norm_sqr_constant(params, z2.norm_sqr())?)
            .sqrt();
            Ok(num / den)
        }
        None => {
            let b = params.b();
            Ok(((cross - 0.5 * z1.norm_sqr() - 0.5 * z2.norm_sqr()) / b).exp())
        }
    }
}

/// Radial density `w(x)` of the resolving measure, `x = |z|^2 >= 0`.
///
/// For `a > 0` this is the Bessel form quoted in the module docs; in the
/// harmonic limit it degenerates to the constant-scale exponential
/// `e^{-x/b}/b`. Both branches satisfy `∫ x^n w(x) dx = e_1 ... e_n` and both
/// approach `1/b` as `x -> 0`.
pub fn measure_density(params: &SpectrumParams, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::OutsideDomain {
            what: "measure_density",
            value: x,
        });
    }
    match params.level_ratio() {
        Some(r) => {
            if x == 0.0 {
                return Ok(1.0 / params.b());
            }
            let a = params.a();
            let scaled = x / a;
            let pre = (2.0 / a) * (-log_gamma(r + 1.0)?).exp();
            Ok(pre * scaled.powf(0.5 * r) * bessel_k(r, 2.0 * scaled.sqrt())?)
        }
        None => Ok((-x / params.b()).exp() / params.b()),
    }
}

/// `∫ x^n w(x) dx = e_1 e_2 ... e_n` in closed form
/// (`= n! Γ(n+r+1) a^n / Γ(r+1)` for `a > 0`, `n! b^n` in the harmonic
/// limit).
pub fn moment_closed_form(params: &SpectrumParams, n: usize) -> Result<f64> {
    let nf = n as f64;
    let log = match params.level_ratio() {
        Some(r) => {
            log_gamma(nf + 1.0)? + log_gamma(nf + r + 1.0)? - log_gamma(r + 1.0)?
                + nf * params.a().ln()
        }
        None => log_gamma(nf + 1.0)? + nf * params.b().ln(),
    };
    Ok(log.exp())
}

/// The same moment by adaptive quadrature, as an independent check of the
/// closed form. For `a > 0` the integral is computed in the variable
/// `t = sqrt(x/a)`; fed the raw `x` integrand, the exponential pullback of
/// [`integrate`] meets an `e^{-2 sqrt(x/a)}` tail it cannot resolve.
pub fn moment_quadrature(params: &SpectrumParams, n: usize) -> Result<f64> {
    let nf = n as f64;
    let spec = QuadratureSpec {
        node_count: 24,
        interval: (0.0, f64::INFINITY),
        transform: DomainMap::SemiInfiniteExp,
    };
    match params.level_ratio() {
        Some(r) => {
            // x = a t^2: ∫ x^n w dx = 4 a^n / Γ(r+1) ∫ t^{2n+r+1} K_r(2t) dt.
            let log_pre = 4f64.ln() + nf * params.a().ln() - log_gamma(r + 1.0)?;
            let power = 2.0 * nf + r + 1.0;
            integrate(
                move |t: f64| {
                    if t <= 0.0 {
                        return 0.0;
                    }
                    let k = bessel_k(r, 2.0 * t).unwrap_or(0.0);
                    (log_pre + power * t.ln()).exp() * k
                },
                &spec,
            )
        }
        None => {
            // x = b s: ∫ x^n e^{-x/b}/b dx = b^n ∫ s^n e^{-s} ds.
            let log_b = params.b().ln();
            integrate(
                move |s: f64| {
                    if s <= 0.0 {
                        return 0.0;
                    }
                    (nf * log_b + nf * s.ln() - s).exp()
                },
                &spec,
            )
        }
    }
}

/// Residuals `|M_nn - 1|` of the resolution of identity for `n = 0..=max_n`,
/// with `M_nn = (1/rho_n) ∫ x^n w(x) dx` evaluated by quadrature.
///
/// Off-diagonal entries vanish identically — the angular integral of
/// `e^{i(n-m)θ}` is zero — so only the diagonal carries numerical content.
pub fn resolution_residuals(params: &SpectrumParams, max_n: usize) -> Result<Vec<f64>> {
    let spec = QuadratureSpec {
        node_count: 24,
        interval: (0.0, f64::INFINITY),
        transform: DomainMap::SemiInfiniteExp,
    };
    let mut residuals = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let nf = n as f64;
        let log_rho = params.log_energy_product(n);
        let diag = match params.level_ratio() {
            Some(r) => {
                let log_pre = 4f64.ln() + nf * params.a().ln() - log_gamma(r + 1.0)? - log_rho;
                let power = 2.0 * nf + r + 1.0;
                integrate(
                    move |t: f64| {
                        if t <= 0.0 {
                            return 0.0;
                        }
                        let k = bessel_k(r, 2.0 * t).unwrap_or(0.0);
                        (log_pre + power * t.ln()).exp() * k
                    },
                    &spec,
                )?
            }
            None => {
                let log_gamma_n = log_gamma(nf + 1.0)?;
                integrate(
                    move |s: f64| {
                        if s <= 0.0 {
                            return 0.0;
                        }
                        (nf * s.ln() - s - log_gamma_n).exp()
                    },
                    &spec,
                )?
            }
        };
        residuals.push((diag - 1.0).abs());
    }
    Ok(residuals)
}

/// Element `F_n(z) = z^n / sqrt(rho_n)` of the analytic basis carried by the
/// family: the state coefficients are `c_n(z) = F_n(z)/N(|z|^2)`, and the
/// reproducing sum `Σ_n conj(F_n(z1)) F_n(z2)` converges to the unnormalized
/// kernel `0F1(r+1; conj(z1) z2 / a)`.
pub fn analytic_basis(params: &SpectrumParams, n: usize, z: Complex64) -> Complex64 {
    let mut f = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        f *= z / params.energy(k).sqrt();
    }
    f
}

/// Largest relative residuals of the differential realization of the ladder
/// algebra on the analytic basis, over a grid of labels and degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizationReport {
    /// Multiplication by `z` against `sqrt(e_{n+1}) F_{n+1}`; exact.
    pub raising: f64,
    /// `(z d²/dz² + (r+1) d/dz)` against `sqrt(e_n) F_{n-1}`, the published
    /// lowering form; off by the factor `1/a`.
    pub lowering_published: f64,
    /// `a (z d²/dz² + (r+1) d/dz)` against `sqrt(e_n) F_{n-1}`; exact.
    pub lowering_corrected: f64,
    /// `(2az d/dz + (a+b))` against `(e_{n+1} - e_n) F_n`; exact.
    pub gap: f64,
}

/// Evaluates the three differential-operator realizations on
/// `F_0, ..., F_{n_max}` at each nonzero grid point. The differential side is
/// computed from the monomial form of `F_n` (its derivatives are analytic),
/// the ladder side from the recursion — two routes that only agree if the
/// realization is correct.
pub fn realization_residuals(
    params: &SpectrumParams,
    n_max: usize,
    points: &[Complex64],
) -> Result<RealizationReport> {
    let r = params
        .level_ratio()
        .ok_or(Error::HarmonicDegenerate("differential realization"))?;
    let a = params.a();
    let rel = |lhs: Complex64, rhs: Complex64| (lhs - rhs).norm() / rhs.norm().max(1e-30);
    let mut report = RealizationReport {
        raising: 0.0,
        lowering_published: 0.0,
        lowering_corrected: 0.0,
        gap: 0.0,
    };
    for &z in points {
        for n in 0..=n_max {
            let nf = n as f64;
            let f_n = analytic_basis(params, n, z);
            let f_up = analytic_basis(params, n + 1, z);

            let raise_lhs = z * f_n;
            let raise_rhs = params.energy(n + 1).sqrt() * f_up;
            report.raising = report.raising.max(rel(raise_lhs, raise_rhs));

            if n > 0 && z.norm() > 0.0 {
                // z F'' + (r+1) F' on the monomial F_n = z^n e^{-log_rho/2}:
                // coefficient n(n-1) + (r+1)n = n(n+r) on z^{n-1}.
                let monomial = (-0.5 * params.log_energy_product(n)).exp()
                    * z.powi(n as i32 - 1);
                let action = nf * (nf + r) * monomial;
                let lower_rhs = params.energy(n).sqrt() * analytic_basis(params, n - 1, z);
                report.lowering_published = report.lowering_published.max(rel(action, lower_rhs));
                report.lowering_corrected =
                    report.lowering_corrected.max(rel(a * action, lower_rhs));
            }

            // 2az F' + (a+b) F = (2an + a + b) F, against the gap diagonal.
            let gap_lhs = (2.0 * a * nf + a + params.b()) * f_n;
            let gap_rhs = params.gap(n) * f_n;
            report.gap = report.gap.max(rel(gap_lhs, gap_rhs));
        }
    }
    Ok(report)
}

/// Smallest dimension whose discarded coefficient mass at `|z| = label_modulus`
/// stays below `eps` (relative to the retained mass).
pub fn suggest_dim(params: &SpectrumParams, label_modulus: f64, eps: f64) -> usize {
    let y = label_modulus * label_modulus;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 0..1_000_000usize {
        let e_next = params.energy(n + 1);
        term *= y / e_next;
        // Once the term ratio is below 1/2 the tail is bounded by twice the
        // next term.
        if e_next > 2.0 * y && 2.0 * term <= eps * sum {
            return (n + 1).max(2);
        }
        sum += term;
    }
    unreachable!("term ratio y/e_n tends to zero");
}
