//! Modified Bessel functions `I_nu` and `K_nu` for real order.
//!
//! `K` follows the classic two-regime scheme: Temme's series near the origin
//! (`x <= 2`) and a Steed continued fraction for the tail (`x > 2`), both
//! evaluated at a reduced order `|mu| <= 1/2` and walked up by the stable
//! upward recurrence `K_{v+1} = K_{v-1} + (2v/x) K_v`. `I` uses its ascending
//! series, which converges everywhere and is accurate for the moderate
//! arguments this crate needs.

use crate::error::{Error, Result};
use crate::special::gamma::log_gamma;

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 20_000;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `gam1 = (1/Γ(1-mu) - 1/Γ(1+mu)) / (2 mu)` and
/// `gam2 = (1/Γ(1-mu) + 1/Γ(1+mu)) / 2` for `|mu| <= 1/2`.
///
/// `gam1` has a removable singularity at `mu = 0` (value `-γ`); below 1e-3 a
/// short expansion avoids the cancellation of the direct quotient.
fn reciprocal_gamma_pair(mu: f64) -> (f64, f64) {
    let rg_plus = (-log_gamma(1.0 + mu).expect("argument in [1/2, 3/2]")).exp();
    let rg_minus = (-log_gamma(1.0 - mu).expect("argument in [1/2, 3/2]")).exp();
    let gam2 = 0.5 * (rg_minus + rg_plus);
    let gam1 = if mu.abs() < 1e-3 {
        // -γ + (ζ(2)γ/2 - γ^3/6 - ζ(3)/3) mu^2 + O(mu^4)
        -EULER_GAMMA + 0.042_013_337_378_034_34 * mu * mu
    } else {
        (rg_minus - rg_plus) / (2.0 * mu)
    };
    (gam1, gam2)
}

/// Temme's series: `(K_mu(x), K_{mu+1}(x))` for `0 < x <= 2`, `|mu| <= 1/2`.
fn k_series_pair(mu: f64, x: f64) -> Result<(f64, f64)> {
    let x2 = 0.5 * x;
    let mu2 = mu * mu;
    let pimu = std::f64::consts::PI * mu;
    let fact = if pimu.abs() < EPS {
        1.0
    } else {
        pimu / pimu.sin()
    };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2) = reciprocal_gamma_pair(mu);
    let gampl = gam2 - mu * gam1; // 1/Γ(1+mu)
    let gammi = gam2 + mu * gam1; // 1/Γ(1-mu)

    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let e = e.exp();
    let mut p = 0.5 * e / gampl;
    let mut q = 0.5 / (e * gammi);
    let mut c = 1.0;
    let x2sq = x2 * x2;
    let mut sum1 = p;
    for i in 1..=MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= x2sq / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            return Ok((sum, sum1 * 2.0 / x));
        }
    }
    Err(Error::SeriesDivergence {
        what: "bessel_k series",
        terms: MAX_ITER,
    })
}

/// Steed's continued fraction: `(K_mu(x), K_{mu+1}(x))` for `x > 2`,
/// `|mu| <= 1/2`.
fn k_steed_pair(mu: f64, x: f64) -> Result<(f64, f64)> {
    let mu2 = mu * mu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = delh;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..=MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() <= EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SeriesDivergence {
            what: "bessel_k continued fraction",
            terms: MAX_ITER,
        });
    }
    let h = a1 * h;
    let kmu = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k1 = kmu * (mu + x + 0.5 - h) / x;
    Ok((kmu, k1))
}

/// Macdonald function `K_nu(x)` for `x > 0`; symmetric in the order, so any
/// finite `nu` is accepted. Underflows to zero for large `x`.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 || !nu.is_finite() {
        return Err(Error::OutsideDomain {
            what: "bessel_k",
            value: if x > 0.0 { nu } else { x },
        });
    }
    let nu = nu.abs();
    let steps = (nu + 0.5).floor() as usize;
    let mu = nu - steps as f64;
    let (mut kmu, mut k1) = if x <= 2.0 {
        k_series_pair(mu, x)?
    } else {
        k_steed_pair(mu, x)?
    };
    for i in 1..=steps {
        let knext = (mu + i as f64) * (2.0 / x) * k1 + kmu;
        kmu = k1;
        k1 = knext;
    }
    Ok(kmu)
}

/// Modified Bessel function of the first kind, `nu >= 0`, `x >= 0`, by the
/// ascending series.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 || !nu.is_finite() || nu < 0.0 {
        return Err(Error::OutsideDomain {
            what: "bessel_i",
            value: if x >= 0.0 { nu } else { x },
        });
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let quarter = 0.25 * x * x;
    let mut term = (nu * (0.5 * x).ln() - log_gamma(nu + 1.0)?).exp();
    let mut sum = term;
    for k in 0..MAX_ITER {
        let kf = k as f64;
        term *= quarter / ((kf + 1.0) * (nu + kf + 1.0));
        sum += term;
        if !sum.is_finite() {
            return Err(Error::SeriesDivergence {
                what: "bessel_i",
                terms: k + 1,
            });
        }
        if term <= EPS * sum && kf >= x {
            return Ok(sum);
        }
    }
    Err(Error::SeriesDivergence {
        what: "bessel_i",
        terms: MAX_ITER,
    })
}
