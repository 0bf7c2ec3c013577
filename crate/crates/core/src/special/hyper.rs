use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 20_000;
const TERM_TOL: f64 = 1e-17;

/// Confluent limit function `0F1(; c; y) = sum_k y^k / ((c)_k k!)`, `c > 0`.
///
/// The series converges for every finite argument; for large negative `y` the
/// terms alternate and the sum loses digits to cancellation, which is fine for
/// the moderate arguments this crate feeds it.
pub fn hyper0f1(c: f64, y: f64) -> Result<f64> {
    if !(c > 0.0) || !y.is_finite() {
        return Err(Error::OutsideDomain {
            what: "hyper0f1",
            value: if c > 0.0 { y } else { c },
        });
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= y / ((c + kf) * (kf + 1.0));
        sum += term;
        if !sum.is_finite() {
            return Err(Error::SeriesDivergence {
                what: "hyper0f1",
                terms: k + 1,
            });
        }
        if term.abs() <= TERM_TOL * sum.abs() && kf >= y.abs().sqrt() {
            return Ok(sum);
        }
    }
    Err(Error::SeriesDivergence {
        what: "hyper0f1",
        terms: MAX_TERMS,
    })
}

/// Same series with a complex argument (the lower index stays real).
pub fn hyper0f1_complex(c: f64, y: Complex64) -> Result<Complex64> {
    if !(c > 0.0) || !y.is_finite() {
        return Err(Error::OutsideDomain {
            what: "hyper0f1",
            value: if c > 0.0 { y.norm() } else { c },
        });
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= y / Complex64::new((c + kf) * (kf + 1.0), 0.0);
        sum += term;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::SeriesDivergence {
                what: "hyper0f1",
                terms: k + 1,
            });
        }
        if term.norm() <= TERM_TOL * sum.norm() && kf >= y.norm().sqrt() {
            return Ok(sum);
        }
    }
    Err(Error::SeriesDivergence {
        what: "hyper0f1",
        terms: MAX_TERMS,
    })
}
