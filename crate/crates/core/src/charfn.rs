//! Gil-Pelaez Fourier inversion of the FMLS characteristic function.
//!
//! With `X_T = log(S_T / S) - r T`, the risk-neutral characteristic function is
//! `phi_T(u) = exp[mu T (iu - (iu)^alpha)]`, and the call is
//! `S Pi_1 - K e^{-rT} Pi_2` where
//!
//! ```text
//! Pi_1 = 1/2 + 1/pi int_0^inf Re[e^{iuL} phi_T(u - i) / (iu)] du
//! Pi_2 = 1/2 + 1/pi int_0^inf Re[e^{iuL} phi_T(u)     / (iu)] du
//! ```
//!
//! with `L = log(S/K) + rT`. Because `phi_T` is the transform of the
//! forward-normalized log-return, the strike enters through `L`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{OptionSpec, StableModel};
use crate::quadrature::integrate;
use crate::result::{Diagnostics, Engine, PricingResult};
use crate::special::ComplexValue;

/// Lower integration limit; `[0, U_START]` is filled with the integrand's
/// limit value.
pub const U_START: f64 = 1e-10;

/// Quiet panels in a row before the semi-infinite integral is cut.
const QUIET_PANELS: usize = 3;

/// Probabilities may stray outside [0, 1] by this much before it is an error.
const PROBABILITY_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Truncation of the semi-infinite integrals.
    pub u_max: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Per-panel bisection budget.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            u_max: 200.0,
            rel_tol: 1e-9,
            abs_tol: 1e-10,
            max_subdivisions: 200,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        let ok = self.u_max.is_finite()
            && self.u_max > U_START
            && self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.max_subdivisions > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("invalid quadrature settings {self:?}")))
        }
    }
}

/// phi_T(u) = exp[mu T (iu - (iu)^alpha)] on the principal branch.
pub fn char_fn(u: ComplexValue, mu: f64, tau: f64, alpha: f64) -> Result<ComplexValue> {
    let iu = Complex64::i() * u;
    let iu_alpha = if iu == Complex64::new(0.0, 0.0) {
        iu
    } else if alpha == 2.0 {
        iu * iu
    } else {
        iu.powf(alpha)
    };
    let exponent = mu * tau * (iu - iu_alpha);
    if exponent.re > f64::MAX.ln() || !exponent.re.is_finite() || !exponent.im.is_finite() {
        return Err(Error::Range(format!("characteristic function overflows at u = {u}")));
    }
    Ok(exponent.exp())
}

struct Integrand {
    log_fwd: f64,
    mu: f64,
    tau: f64,
    alpha: f64,
    /// evaluate phi at u - i instead of u
    shifted: bool,
}

impl Integrand {
    fn eval(&self, u: f64) -> f64 {
        let arg = if self.shifted {
            Complex64::new(u, -1.0)
        } else {
            Complex64::new(u, 0.0)
        };
        let phi = match char_fn(arg, self.mu, self.tau, self.alpha) {
            Ok(v) => v,
            Err(_) => return f64::NAN,
        };
        let value = Complex64::new(0.0, u * self.log_fwd).exp() * phi / Complex64::new(0.0, u);
        value.re
    }

    /// |phi| / u at `u`, a bound on the integrand.
    fn envelope(&self, u: f64) -> f64 {
        let arg = if self.shifted {
            Complex64::new(u, -1.0)
        } else {
            Complex64::new(u, 0.0)
        };
        char_fn(arg, self.mu, self.tau, self.alpha)
            .map(|phi| phi.norm() / u)
            .unwrap_or(f64::INFINITY)
    }
}

struct SemiInfinite {
    value: f64,
    error: f64,
    evaluations: usize,
    panels: usize,
    u_end: f64,
}

fn integrate_semi_infinite(f: &Integrand, width: f64, q: &QuadratureSettings) -> Result<SemiInfinite> {
    let mut value = f.eval(U_START) * U_START;
    let mut error = 0.0;
    let mut evaluations = 1;
    let mut panels = 0;
    let mut quiet = 0;
    let mut lo = U_START;
    while lo < q.u_max {
        let hi = (lo + width).min(q.u_max);
        let out = integrate(|u| f.eval(u), lo, hi, q.abs_tol, q.rel_tol, q.max_subdivisions)?;
        value += out.value;
        error += out.error;
        evaluations += out.evaluations;
        panels += 1;
        quiet = if out.value.abs() < q.abs_tol { quiet + 1 } else { 0 };
        lo = hi;
        if quiet >= QUIET_PANELS {
            break;
        }
    }
    if quiet < QUIET_PANELS {
        let tail = f.envelope(q.u_max);
        if tail > q.abs_tol {
            return Err(Error::Quadrature {
                message: format!("integrand envelope {tail:.3e} at u_max = {} above tolerance", q.u_max),
                partial: value,
                error_estimate: error + tail,
            });
        }
    }
    Ok(SemiInfinite {
        value,
        error,
        evaluations,
        panels,
        u_end: lo,
    })
}

fn probability(name: &str, integral: &SemiInfinite) -> Result<f64> {
    let p = 0.5 + integral.value / PI;
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) {
        return Err(Error::Quadrature {
            message: format!("{name} = {p} outside [0, 1]"),
            partial: p,
            error_estimate: integral.error / PI,
        });
    }
    Ok(p.clamp(0.0, 1.0))
}

/// European call by Gil-Pelaez inversion of the characteristic function.
pub fn gil_pelaez_price(model: &StableModel, spec: &OptionSpec, q: &QuadratureSettings) -> Result<PricingResult> {
    model.check_matches(spec)?;
    q.validate()?;
    let alpha = model.alpha();
    // |phi_T(u)| = exp(-(-mu T)|cos(pi alpha/2)| u^alpha): one decay length per panel pair
    let decay = (model.neg_mu_tau() * (FRAC_PI_2 * alpha).cos().abs()).powf(-1.0 / alpha);
    let width = (0.5 * decay).clamp(1e-3, q.u_max);

    let make = |shifted| Integrand {
        log_fwd: model.log_fwd(),
        mu: model.mu(),
        tau: model.tau(),
        alpha,
        shifted,
    };
    let first = integrate_semi_infinite(&make(true), width, q)?;
    let second = integrate_semi_infinite(&make(false), width, q)?;
    let pi1 = probability("Pi_1", &first)?;
    let pi2 = probability("Pi_2", &second)?;

    let discounted_strike = spec.discounted_strike();
    let raw = spec.spot() * pi1 - discounted_strike * pi2;

    let mut diagnostics = Diagnostics::new();
    diagnostics.number("pi1", pi1);
    diagnostics.number("pi2", pi2);
    diagnostics.count("evaluations_pi1", first.evaluations);
    diagnostics.count("evaluations_pi2", second.evaluations);
    diagnostics.count("panels_pi1", first.panels);
    diagnostics.count("panels_pi2", second.panels);
    diagnostics.number("u_end", first.u_end.max(second.u_end));
    diagnostics.flag("floored_at_zero", raw < 0.0);

    Ok(PricingResult {
        price: raw.max(0.0),
        engine: Engine::GilPelaez,
        terms_used: first.evaluations + second.evaluations,
        error_estimate: (spec.spot() * first.error + discounted_strike * second.error) / PI,
        diagnostics,
    })
}

/// Gil-Pelaez price with default quadrature settings.
pub fn gil_pelaez_price_default(spec: &OptionSpec, alpha: f64) -> Result<PricingResult> {
    let model = StableModel::new(alpha, spec)?;
    gil_pelaez_price(&model, spec, &QuadratureSettings::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::black_scholes::bs_price;

    #[test]
    fn normalization_points() {
        let one = char_fn(Complex64::new(0.0, 0.0), -0.04, 1.0, 1.7).unwrap();
        assert_eq!(one, Complex64::new(1.0, 0.0));
        let martingale = char_fn(Complex64::new(0.0, -1.0), -0.04, 1.0, 1.7).unwrap();
        assert!((martingale - 1.0).norm() < 1e-15);
    }

    #[test]
    fn gaussian_case_matches_normal_transform() {
        // drift mu T, variance -2 mu T: exp(i u mu T - (-mu T) u^2)
        let (mu, tau) = (-0.02, 1.5);
        for i in -20..=20 {
            let u = 0.7 * i as f64;
            let got = char_fn(Complex64::new(u, 0.0), mu, tau, 2.0).unwrap();
            let mean = mu * tau;
            let variance = -2.0 * mu * tau;
            let expected = Complex64::new(-0.5 * variance * u * u, mean * u).exp();
            assert!((got - expected).norm() < 1e-14, "u = {u}");
        }
    }

    #[test]
    fn reference_prices() {
        let otm = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
        let itm = OptionSpec::new(4200.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
        let p = gil_pelaez_price_default(&otm, 1.7).unwrap();
        assert!((p.price - 256.04).abs() < 0.01, "{}", p.price);
        let p = gil_pelaez_price_default(&itm, 1.5).unwrap();
        assert!((p.price - 547.67).abs() < 0.01, "{}", p.price);
    }

    #[test]
    fn gaussian_price_matches_black_scholes() {
        for &(spot, tau) in &[(3800.0, 1.0), (4200.0, 0.5), (4000.0, 3.0)] {
            let spec = OptionSpec::new(spot, 4000.0, 0.01, 0.2, tau).unwrap();
            let p = gil_pelaez_price_default(&spec, 2.0).unwrap();
            assert!((p.price - bs_price(&spec)).abs() < 1e-4 * 4000.0);
        }
    }

    #[test]
    fn probabilities_reported() {
        let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
        let p = gil_pelaez_price_default(&spec, 1.7).unwrap();
        let pi1 = p.diagnostics.get_number("pi1").unwrap();
        let pi2 = p.diagnostics.get_number("pi2").unwrap();
        assert!((0.0..=1.0).contains(&pi1) && (0.0..=1.0).contains(&pi2));
        // the share measure puts more weight on high prices
        assert!(pi1 > pi2);
    }

    #[test]
    fn short_truncation_is_an_error() {
        let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
        let model = StableModel::new(1.7, &spec).unwrap();
        let q = QuadratureSettings { u_max: 5.0, ..Default::default() };
        assert!(matches!(gil_pelaez_price(&model, &spec, &q), Err(Error::Quadrature { .. })));
    }
}
