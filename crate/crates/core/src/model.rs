//! Market inputs and the derived FMLS model quantities.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::error::{Error, Result};

/// Stability indices closer than this to 1 are rejected: the martingale
/// drift diverges as alpha approaches 1 from above.
pub const ALPHA_SINGULARITY_GUARD: f64 = 1e-9;

fn require_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be finite and > 0, got {value}")))
    }
}

/// Checks that `alpha` lies in (1, 2].
pub fn validate_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 1.0 + ALPHA_SINGULARITY_GUARD || alpha > 2.0 {
        return Err(Error::Domain(format!(
            "stability index alpha must lie in (1, 2], got {alpha}"
        )));
    }
    Ok(())
}

/// A contract without a volatility: what an implied-volatility solve starts from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contract {
    spot: f64,
    strike: f64,
    rate: f64,
    tau: f64,
}

impl Contract {
    pub fn new(spot: f64, strike: f64, rate: f64, tau: f64) -> Result<Self> {
        require_positive("spot", spot)?;
        require_positive("strike", strike)?;
        require_positive("tau", tau)?;
        if !rate.is_finite() {
            return Err(Error::InvalidInput(format!("rate must be finite, got {rate}")));
        }
        Ok(Self { spot, strike, rate, tau })
    }

    pub fn spot(&self) -> f64 {
        self.spot
    }

    pub fn strike(&self) -> f64 {
        self.strike
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn with_sigma(&self, sigma: f64) -> Result<OptionSpec> {
        OptionSpec::new(self.spot, self.strike, self.rate, sigma, self.tau)
    }

    /// Discounted strike K e^{-r tau}.
    pub fn discounted_strike(&self) -> f64 {
        self.strike * (-self.rate * self.tau).exp()
    }

    /// Model-free bounds max(S - K e^{-r tau}, 0) and S on a call price.
    pub fn no_arbitrage_bounds(&self) -> (f64, f64) {
        ((self.spot - self.discounted_strike()).max(0.0), self.spot)
    }
}

/// Market inputs of one European call.
///
/// `sigma` is the Gaussian-equivalent volatility per square-root year: the
/// stable driver is scaled by sigma / sqrt(2), so at alpha = 2 the model is
/// exactly Black-Scholes with volatility `sigma`. Calibrating against a
/// stable scale parameter directly would be off by a factor sqrt(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptionSpec {
    contract: Contract,
    sigma: f64,
}

impl OptionSpec {
    pub fn new(spot: f64, strike: f64, rate: f64, sigma: f64, tau: f64) -> Result<Self> {
        let contract = Contract::new(spot, strike, rate, tau)?;
        require_positive("sigma", sigma)?;
        Ok(Self { contract, sigma })
    }

    pub fn spot(&self) -> f64 {
        self.contract.spot
    }

    pub fn strike(&self) -> f64 {
        self.contract.strike
    }

    pub fn rate(&self) -> f64 {
        self.contract.rate
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn tau(&self) -> f64 {
        self.contract.tau
    }

    pub fn contract(&self) -> Contract {
        self.contract
    }

    pub fn discounted_strike(&self) -> f64 {
        self.contract.discounted_strike()
    }

    pub fn no_arbitrage_bounds(&self) -> (f64, f64) {
        self.contract.no_arbitrage_bounds()
    }

    pub fn with_spot(&self, spot: f64) -> Result<Self> {
        Self::new(spot, self.strike(), self.rate(), self.sigma, self.tau())
    }

    pub fn with_strike(&self, strike: f64) -> Result<Self> {
        Self::new(self.spot(), strike, self.rate(), self.sigma, self.tau())
    }

    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        self.contract.with_sigma(sigma)
    }

    pub fn with_tau(&self, tau: f64) -> Result<Self> {
        Self::new(self.spot(), self.strike(), self.rate(), self.sigma, tau)
    }
}

/// Martingale drift mu = (sigma / sqrt 2)^alpha / cos(pi alpha / 2).
///
/// Strictly negative on 1 < alpha <= 2 and equal to -sigma^2 / 2 at alpha = 2.
pub fn martingale_drift(sigma: f64, alpha: f64) -> Result<f64> {
    validate_alpha(alpha)?;
    require_positive("sigma", sigma)?;
    if alpha == 2.0 {
        return Ok(-0.5 * sigma * sigma);
    }
    Ok((sigma / SQRT_2).powf(alpha) / (FRAC_PI_2 * alpha).cos())
}

/// Log-forward-moneyness log(S/K) + r tau.
pub fn log_moneyness(spec: &OptionSpec) -> f64 {
    (spec.spot() / spec.strike()).ln() + spec.rate() * spec.tau()
}

/// Stability index together with the two derived quantities every engine
/// consumes. Only constructible from a validated [`OptionSpec`], so the
/// drift is always strictly negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableModel {
    alpha: f64,
    mu: f64,
    log_fwd: f64,
    tau: f64,
}

impl StableModel {
    pub fn new(alpha: f64, spec: &OptionSpec) -> Result<Self> {
        let mu = martingale_drift(spec.sigma(), alpha)?;
        if !(mu < 0.0) {
            // sigma so small that mu underflowed to zero
            return Err(Error::Range(format!(
                "martingale drift {mu} is not strictly negative for sigma = {}",
                spec.sigma()
            )));
        }
        Ok(Self {
            alpha,
            mu,
            log_fwd: log_moneyness(spec),
            tau: spec.tau(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn log_fwd(&self) -> f64 {
        self.log_fwd
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// -mu tau, strictly positive.
    pub fn neg_mu_tau(&self) -> f64 {
        -self.mu * self.tau
    }

    /// Scale (-mu tau)^{1/alpha} of the log-return density.
    pub fn scale(&self) -> f64 {
        self.neg_mu_tau().powf(1.0 / self.alpha)
    }

    /// Fails unless this model was built from `spec`.
    pub(crate) fn check_matches(&self, spec: &OptionSpec) -> Result<()> {
        let mu = martingale_drift(spec.sigma(), self.alpha)?;
        let same = (mu - self.mu).abs() <= 1e-14 * self.mu.abs()
            && (log_moneyness(spec) - self.log_fwd).abs() <= 1e-14
            && spec.tau() == self.tau;
        if same {
            Ok(())
        } else {
            Err(Error::InvalidInput(
                "stable model was built from a different option spec".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drift_gaussian_limit() {
        assert_eq!(martingale_drift(0.2, 2.0).unwrap(), -0.5 * 0.2 * 0.2);
        for i in 1..50 {
            let sigma = 0.013 * i as f64;
            let mu = martingale_drift(sigma, 2.0).unwrap();
            assert!((mu + 0.5 * sigma * sigma).abs() <= 1e-15 * mu.abs());
        }
    }

    #[test]
    fn drift_stable_reference() {
        // (0.2/sqrt2)^1.7 / cos(0.85 pi), 30-digit reference
        let mu = martingale_drift(0.2, 1.7).unwrap();
        assert!((mu - (-0.040_364_038_546_938_74)).abs() < 1e-15);
    }

    #[test]
    fn drift_vanishes_with_sigma() {
        let mu = martingale_drift(1e-12, 1.7).unwrap();
        assert!(mu < 0.0 && mu > -1e-18);
    }

    #[test]
    fn alpha_range() {
        assert!(martingale_drift(0.2, 1.0).is_err());
        assert!(martingale_drift(0.2, 1.0 + 1e-10).is_err());
        assert!(martingale_drift(0.2, 0.9).is_err());
        assert!(martingale_drift(0.2, 2.0 + 1e-12).is_err());
        assert!(martingale_drift(0.2, 1.0 + 1e-6).is_ok());
    }

    #[test]
    fn log_moneyness_values() {
        let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
        assert!((log_moneyness(&spec) - (-0.041_293_294_387_550_58)).abs() < 1e-15);
        let atm = OptionSpec::new(100.0, 100.0, 0.0, 0.2, 1.0).unwrap();
        assert_eq!(log_moneyness(&atm), 0.0);
        let k = 4000.0;
        let fwd = OptionSpec::new(k * (-0.03f64).exp(), k, 0.01, 0.2, 3.0).unwrap();
        assert!(log_moneyness(&fwd).abs() < 1e-15);
    }

    #[test]
    fn spec_validation() {
        assert!(OptionSpec::new(0.0, 1.0, 0.0, 0.2, 1.0).is_err());
        assert!(OptionSpec::new(1.0, -1.0, 0.0, 0.2, 1.0).is_err());
        assert!(OptionSpec::new(1.0, 1.0, f64::NAN, 0.2, 1.0).is_err());
        assert!(OptionSpec::new(1.0, 1.0, -0.02, 0.2, 1.0).is_ok());
        assert!(OptionSpec::new(1.0, 1.0, 0.0, 0.0, 1.0).is_err());
        assert!(OptionSpec::new(1.0, 1.0, 0.0, 0.2, 0.0).is_err());
    }

    #[test]
    fn model_rejects_foreign_spec() {
        let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
        let model = StableModel::new(1.7, &spec).unwrap();
        assert!(model.check_matches(&spec).is_ok());
        assert!(model.check_matches(&spec.with_spot(4200.0).unwrap()).is_err());
        assert!(model.neg_mu_tau() > 0.0);
    }
}
