//! Closed double residue series for the FMLS European call.
//!
//! The call price is
//!
//! ```text
//! C = (K e^{-r tau} / alpha) * sum_{n >= 0, m >= 1}
//!       (-1)^n / (n! Gamma(1 - (n - m)/alpha)) * (-L - mu tau)^n * (-mu tau)^{(m - n)/alpha}
//! ```
//!
//! with `L = log(S/K) + r tau` and `mu` the martingale drift. Terms are
//! evaluated in log space (`-mu tau > 0` always, and every power of the
//! other base is an integer power) and summed column by column (fixed `m`,
//! all `n`) with compensated accumulation, so partial sums are reproducible
//! bit for bit.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::model::{Contract, OptionSpec, StableModel};
use crate::result::{Diagnostics, Engine, PricingResult};
use crate::special::{ln_abs_reciprocal_gamma, ln_gamma_real, reciprocal_gamma};
use crate::summation::KahanSum;

/// Largest index accepted in either direction.
pub const MAX_INDEX: usize = 64;

/// Default early-stop threshold, relative to the strike.
pub const DEFAULT_RELATIVE_TAIL_TOL: f64 = 1e-8;

const IMPLIED_VOL_BRACKET: (f64, f64) = (1e-4, 5.0);
const IMPLIED_VOL_MAX_ITER: usize = 200;

/// Truncation rectangle `n in [0, n_max]`, `m in [1, m_max]` plus the
/// early-stop threshold on a whole column's absolute contribution.
/// `tail_tol = 0` disables both early stopping and the convergence check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    n_max: usize,
    m_max: usize,
    tail_tol: f64,
}

impl Truncation {
    pub fn new(n_max: usize, m_max: usize, tail_tol: f64) -> Result<Self> {
        if n_max > MAX_INDEX || m_max > MAX_INDEX {
            return Err(Error::InvalidInput(format!(
                "truncation indices must not exceed {MAX_INDEX} (got n_max = {n_max}, m_max = {m_max})"
            )));
        }
        if m_max < 1 {
            return Err(Error::InvalidInput("m_max must be at least 1".into()));
        }
        if !(tail_tol.is_finite() && tail_tol >= 0.0) {
            return Err(Error::InvalidInput(format!("tail_tol must be >= 0, got {tail_tol}")));
        }
        Ok(Self { n_max, m_max, tail_tol })
    }

    /// Fixed rectangle with no early stop.
    pub fn fixed(n_max: usize, m_max: usize) -> Result<Self> {
        Self::new(n_max, m_max, 0.0)
    }

    /// Full 64 x 64 rectangle with early stop at `1e-8 * K`.
    pub fn for_strike(strike: f64) -> Self {
        Self {
            n_max: MAX_INDEX,
            m_max: MAX_INDEX,
            tail_tol: DEFAULT_RELATIVE_TAIL_TOL * strike,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }
}

/// Per-term evaluator with the (n, m)-independent logarithms hoisted.
struct TermEvaluator {
    alpha: f64,
    ln_prefactor: f64,
    /// -L - mu tau
    base: f64,
    ln_neg_mu_tau: f64,
}

impl TermEvaluator {
    fn new(model: &StableModel, spec: &OptionSpec) -> Self {
        let alpha = model.alpha();
        Self {
            alpha,
            ln_prefactor: spec.strike().ln() - spec.rate() * spec.tau() - alpha.ln(),
            base: -model.log_fwd() - model.mu() * model.tau(),
            ln_neg_mu_tau: model.neg_mu_tau().ln(),
        }
    }

    fn term(&self, n: usize, m: usize) -> Result<f64> {
        let shift = (n as f64 - m as f64) / self.alpha;
        let (ln_rgamma, rgamma_sign) = ln_abs_reciprocal_gamma(1.0 - shift)?;
        if rgamma_sign == 0.0 || (n > 0 && self.base == 0.0) {
            return Ok(0.0);
        }
        let ln_power = if n == 0 { 0.0 } else { n as f64 * self.base.abs().ln() };
        let ln_magnitude = self.ln_prefactor - ln_gamma_real(n as f64 + 1.0)? + ln_power
            - shift * self.ln_neg_mu_tau
            + ln_rgamma;
        if ln_magnitude > f64::MAX.ln() {
            return Err(Error::Range(format!(
                "series term ({n}, {m}) overflows (log magnitude {ln_magnitude:.1})"
            )));
        }
        // (-1)^n (base)^n = (-base)^n
        let sign = if n % 2 == 1 && self.base > 0.0 { -1.0 } else { 1.0 } * rgamma_sign;
        Ok(sign * ln_magnitude.exp())
    }

    /// The series is derived assuming L + mu tau < 0; it stays valid
    /// otherwise but callers get a diagnostic.
    fn lemma_hypothesis_holds(&self) -> bool {
        self.base > 0.0
    }
}

/// The `(n, m)` contribution, including the `K e^{-r tau} / alpha` prefactor.
/// Exactly zero when `1 - (n - m)/alpha` is a pole of Gamma.
pub fn series_term(model: &StableModel, spec: &OptionSpec, n: usize, m: usize) -> Result<f64> {
    model.check_matches(spec)?;
    if n > MAX_INDEX || m > MAX_INDEX || m == 0 {
        return Err(Error::InvalidInput(format!(
            "term index out of range: n = {n}, m = {m} (need 0 <= n <= {MAX_INDEX}, 1 <= m <= {MAX_INDEX})"
        )));
    }
    TermEvaluator::new(model, spec).term(n, m)
}

/// Sums the series over the truncation rectangle, column by column, stopping
/// once a whole column contributes less than `tail_tol` in absolute value.
/// With `tail_tol > 0` the last column summed and the last row `n = n_max`
/// must both fall below `tail_tol`, otherwise the sum is reported as not
/// converged.
pub fn price_series(model: &StableModel, spec: &OptionSpec, trunc: &Truncation) -> Result<PricingResult> {
    model.check_matches(spec)?;
    let eval = TermEvaluator::new(model, spec);
    let rows = trunc.n_max + 1;

    let mut total = KahanSum::new();
    let mut last_column_abs = 0.0;
    let mut last_row_abs = 0.0;
    let mut sum_abs = 0.0;
    let mut columns = 0;
    for m in 1..=trunc.m_max {
        let mut column = KahanSum::new();
        let mut column_abs = 0.0;
        for n in 0..rows {
            let t = eval.term(n, m)?;
            column.add(t);
            column_abs += t.abs();
            sum_abs += t.abs();
            if n == trunc.n_max {
                last_row_abs += t.abs();
            }
        }
        total.add(column.value());
        last_column_abs = column_abs;
        columns = m;
        if trunc.tail_tol > 0.0 && column_abs < trunc.tail_tol {
            break;
        }
    }

    let raw = total.value();
    if trunc.tail_tol > 0.0 && (last_column_abs >= trunc.tail_tol || last_row_abs >= trunc.tail_tol) {
        return Err(Error::SeriesNonConvergence {
            partial_price: raw,
            last_column: last_column_abs,
            last_row: last_row_abs,
            tail_tol: trunc.tail_tol,
        });
    }

    let mut diagnostics = Diagnostics::new();
    diagnostics.count("columns_used", columns);
    diagnostics.count("rows_used", rows);
    diagnostics.number("last_column_abs", last_column_abs);
    diagnostics.number("last_row_abs", last_row_abs);
    diagnostics.number("raw_sum", raw);
    diagnostics.number("sum_abs", sum_abs);
    diagnostics.flag("lemma_hypothesis_holds", eval.lemma_hypothesis_holds());
    diagnostics.flag("floored_at_zero", raw < 0.0);

    Ok(PricingResult {
        price: raw.max(0.0),
        engine: Engine::Series,
        terms_used: columns * rows,
        // truncation in both directions plus rounding in the cancelling sum
        error_estimate: last_column_abs + last_row_abs + f64::EPSILON * sum_abs,
        diagnostics,
    })
}

/// Prices a spec at stability index `alpha` with the default truncation.
pub fn price_series_default(spec: &OptionSpec, alpha: f64) -> Result<PricingResult> {
    let model = StableModel::new(alpha, spec)?;
    price_series(&model, spec, &Truncation::for_strike(spec.strike()))
}

/// Every term of the truncation rectangle with cumulative column sums.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTable {
    /// `terms[n][m - 1]`
    terms: Vec<Vec<f64>>,
    /// `partial_sums[m - 1]` = sum of columns 1..=m
    partial_sums: Vec<f64>,
    converged_price: f64,
}

impl SeriesTable {
    pub fn n_max(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn m_max(&self) -> usize {
        self.partial_sums.len()
    }

    /// Term `(n, m)`, with `m` starting at 1.
    pub fn term(&self, n: usize, m: usize) -> f64 {
        self.terms[n][m - 1]
    }

    pub fn terms(&self) -> &[Vec<f64>] {
        &self.terms
    }

    /// Cumulative sum of columns `1..=m`.
    pub fn partial_sum(&self, m: usize) -> f64 {
        self.partial_sums[m - 1]
    }

    pub fn partial_sums(&self) -> &[f64] {
        &self.partial_sums
    }

    pub fn converged_price(&self) -> f64 {
        self.converged_price
    }
}

/// The full `(n, m)` matrix and the "Call" row of cumulative column sums.
/// Never stops early; the convergence check on the last column still applies.
pub fn convergence_table(model: &StableModel, spec: &OptionSpec, trunc: &Truncation) -> Result<SeriesTable> {
    model.check_matches(spec)?;
    let eval = TermEvaluator::new(model, spec);
    let mut terms = vec![vec![0.0; trunc.m_max]; trunc.n_max + 1];
    let mut partial_sums = Vec::with_capacity(trunc.m_max);
    let mut total = KahanSum::new();
    let mut last_column_abs = 0.0;
    for m in 1..=trunc.m_max {
        let mut column = KahanSum::new();
        let mut column_abs = 0.0;
        for (n, row) in terms.iter_mut().enumerate() {
            let t = eval.term(n, m)?;
            row[m - 1] = t;
            column.add(t);
            column_abs += t.abs();
        }
        total.add(column.value());
        partial_sums.push(total.value());
        last_column_abs = column_abs;
    }
    let last_row_abs: f64 = terms[trunc.n_max].iter().map(|t| t.abs()).sum();
    if trunc.tail_tol > 0.0 && (last_column_abs >= trunc.tail_tol || last_row_abs >= trunc.tail_tol) {
        return Err(Error::SeriesNonConvergence {
            partial_price: total.value(),
            last_column: last_column_abs,
            last_row: last_row_abs,
            tail_tol: trunc.tail_tol,
        });
    }
    Ok(SeriesTable {
        terms,
        converged_price: total.value(),
        partial_sums,
    })
}

fn atmf_argument(sigma: f64, tau: f64) -> f64 {
    sigma * tau.sqrt() / SQRT_2
}

fn power_over_factorial(x: f64, k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (x / i as f64))
}

/// At-the-money-forward Black-Scholes price as a power series in
/// `x = sigma sqrt(tau) / sqrt 2`, taken from the alpha = 2 double series:
/// `S/2 * sum (-1)^n / (n! Gamma(1 - (n - m)/2)) x^{n+m}` over `n >= 0`,
/// `m >= 1`, `n + m <= 2 order + 1`.
///
/// Order 0 is the Brenner-Subrahmanyam approximation `S sigma sqrt(tau) / sqrt(2 pi)`.
pub fn atmf_bs_series(spot: f64, sigma: f64, tau: f64, order: usize) -> f64 {
    let x = atmf_argument(sigma, tau);
    let max_power = 2 * order + 1;
    let mut total = KahanSum::new();
    for m in 1..=max_power {
        for n in 0..=(max_power - m) {
            let rg = reciprocal_gamma(1.0 - 0.5 * (n as f64 - m as f64))
                .expect("argument bounded by the series order");
            if rg == 0.0 {
                continue;
            }
            let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
            let x_power = if x == 0.0 { 0.0 } else { x.powi((n + m) as i32) };
            total.add(sign * rg * x_power / factorial(n));
        }
    }
    0.5 * spot * total.value()
}

/// Same series collapsed to one sum over half-integer Gamma values:
/// `S * sum_{n <= order} x^{2n+1} / ((2n+1)! Gamma(1/2 - n))`.
pub fn atmf_bs_series_half_gamma(spot: f64, sigma: f64, tau: f64, order: usize) -> f64 {
    let x = atmf_argument(sigma, tau);
    let mut total = KahanSum::new();
    total.extend((0..=order).map(|n| atmf_half_gamma_term(n, x)));
    spot * total.value()
}

/// `n`-th term (per unit spot) of the Taylor expansion of N(v/2) - N(-v/2):
/// `(-1)^n x^{2n+1} / (sqrt(pi) n! 4^n (2n+1))`.
pub fn atmf_taylor_term(n: usize, x: f64) -> f64 {
    let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
    let k = 2 * n + 1;
    sign * x.powi(k as i32) / (PI.sqrt() * factorial(n) * 4f64.powi(n as i32) * k as f64)
}

/// `n`-th term (per unit spot) of the half-integer-Gamma form:
/// `x^{2n+1} / ((2n+1)! Gamma(1/2 - n))`.
pub fn atmf_half_gamma_term(n: usize, x: f64) -> f64 {
    let rg = reciprocal_gamma(0.5 - n as f64).expect("half-integer argument is never a pole");
    power_over_factorial(x, 2 * n + 1) * rg
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Volatility reproducing `target_price` under the series price at
/// stability index `alpha`, by bisection on sigma in [1e-4, 5].
pub fn implied_vol(contract: &Contract, alpha: f64, target_price: f64, tol: f64) -> Result<f64> {
    crate::model::validate_alpha(alpha)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be > 0, got {tol}")));
    }
    let (lower, upper) = contract.no_arbitrage_bounds();
    if !(target_price > lower && target_price < upper) {
        return Err(Error::OutOfBounds { target: target_price, lower, upper });
    }

    let tail_tol = (1e-2 * tol).min(DEFAULT_RELATIVE_TAIL_TOL * contract.strike());
    let trunc = Truncation::new(MAX_INDEX, MAX_INDEX, tail_tol)?;
    let price_at = |sigma: f64| -> Result<f64> {
        let spec = contract.with_sigma(sigma)?;
        let model = StableModel::new(alpha, &spec)?;
        Ok(price_series(&model, &spec, &trunc)?.price)
    };

    let (mut lo, mut hi) = IMPLIED_VOL_BRACKET;
    let mut sigma = 0.5 * (lo + hi);
    let mut residual = f64::INFINITY;
    for _ in 0..IMPLIED_VOL_MAX_ITER {
        sigma = 0.5 * (lo + hi);
        residual = price_at(sigma)? - target_price;
        if residual.abs() <= tol {
            return Ok(sigma);
        }
        if residual < 0.0 {
            lo = sigma;
        } else {
            hi = sigma;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Err(Error::ImpliedVolNonConvergence {
        iterations: IMPLIED_VOL_MAX_ITER,
        sigma,
        residual,
    })
}
