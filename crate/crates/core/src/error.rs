use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Spectrum coefficients must satisfy `a >= 0`, `b > 0`, both finite.
    #[error("invalid spectrum parameters a = {a}, b = {b} (need a >= 0, b > 0, finite)")]
    InvalidSpectrum { a: f64, b: f64 },

    /// Truncated spaces need at least two levels for the ladder structure to exist.
    #[error("Fock space dimension {0} is too small (need at least 2)")]
    DimensionTooSmall(usize),

    /// Two operators or vectors that must live on the same space do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A disc label must have modulus strictly below one.
    #[error("point lies outside the open unit disc (|zeta| = {modulus})")]
    OutsideDisc { modulus: f64 },

    /// Operations tied to the disc geometry degenerate in the harmonic limit a = 0.
    #[error("{0} requires a > 0 (degenerates in the harmonic limit)")]
    HarmonicDegenerate(&'static str),

    /// An argument left the mathematical domain of a special function.
    #[error("{what} is undefined at {value}")]
    OutsideDomain { what: &'static str, value: f64 },

    /// A series failed to meet its convergence criterion within the term cap.
    #[error("series for {what} did not converge within {terms} terms")]
    SeriesDivergence { what: &'static str, terms: usize },

    /// Successive refinements stopped improving before reaching tolerance.
    #[error("quadrature did not converge (last two estimates {previous:e}, {latest:e})")]
    QuadratureNonConvergence { previous: f64, latest: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
