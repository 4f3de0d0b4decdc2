use thiserror::Error;

/// Every failure the pricing engines can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("pole of the Gamma function at {0}")]
    Pole(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("series did not converge: last column contributes {last_column:.3e} and last row {last_row:.3e}, tolerance {tail_tol:.3e} (partial price {partial_price})")]
    SeriesNonConvergence {
        partial_price: f64,
        last_column: f64,
        last_row: f64,
        tail_tol: f64,
    },

    #[error("quadrature did not converge: {message} (partial value {partial}, error estimate {error_estimate:.3e})")]
    Quadrature {
        message: String,
        partial: f64,
        error_estimate: f64,
    },

    #[error("contour truncated at |Im t| = {y_max}: integrand tail {tail:.3e} still above tolerance")]
    ContourTruncation { y_max: f64, tail: f64 },

    #[error("density {value:.3e} at X = {x} is below the negativity floor")]
    NegativeDensity { x: f64, value: f64 },

    #[error("target price {target} outside the no-arbitrage bounds ({lower}, {upper})")]
    OutOfBounds { target: f64, lower: f64, upper: f64 },

    #[error("implied volatility bisection did not converge after {iterations} iterations (last sigma {sigma}, residual {residual:.3e})")]
    ImpliedVolNonConvergence {
        iterations: usize,
        sigma: f64,
        residual: f64,
    },
}

impl Error {
    /// True for errors caused by the caller's inputs rather than by a
    /// numerical failure inside an engine.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::InvalidInput(_) | Error::OutOfBounds { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
