//! Black-Scholes closed forms, the exact alpha = 2 reference.

use crate::model::{log_moneyness, OptionSpec};
use crate::special::normal_cdf;

/// Black-Scholes call price.
pub fn bs_price(spec: &OptionSpec) -> f64 {
    let vol = spec.sigma() * spec.tau().sqrt();
    let d = log_moneyness(spec) / vol;
    let price =
        spec.spot() * normal_cdf(d + 0.5 * vol) - spec.discounted_strike() * normal_cdf(d - 0.5 * vol);
    price.max(0.0)
}

/// Call price at-the-money forward (S = K e^{-r tau}): S [N(v/2) - N(-v/2)]
/// with v = sigma sqrt(tau).
pub fn bs_atmf_price(spot: f64, sigma: f64, tau: f64) -> f64 {
    let half_vol = 0.5 * sigma * tau.sqrt();
    spot * (normal_cdf(half_vol) - normal_cdf(-half_vol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_prices() {
        let otm = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
        let itm = OptionSpec::new(4200.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
        assert!((bs_price(&otm) - 235.52).abs() < 0.01);
        assert!((bs_price(&itm) - 458.79).abs() < 0.01);
    }

    #[test]
    fn zero_vol_limit_is_intrinsic_forward() {
        for &spot in &[3000.0, 3960.0, 4100.0, 5000.0] {
            let spec = OptionSpec::new(spot, 4000.0, 0.01, 1e-9, 1.0).unwrap();
            let intrinsic = (spot - spec.discounted_strike()).max(0.0);
            assert!((bs_price(&spec) - intrinsic).abs() < 1e-6);
        }
    }

    #[test]
    fn atmf_matches_general_formula() {
        for &(sigma, tau, rate) in &[(0.2, 1.0f64, 0.01f64), (0.35, 2.5, 0.03), (0.1, 0.25, -0.01)] {
            let strike = 4000.0;
            let spot = strike * (-rate * tau).exp();
            let spec = OptionSpec::new(spot, strike, rate, sigma, tau).unwrap();
            let general = bs_price(&spec);
            let atmf = bs_atmf_price(spot, sigma, tau);
            assert!((general - atmf).abs() <= 1e-14 * atmf, "{general} vs {atmf}");
        }
    }

    #[test]
    fn brenner_subrahmanyam_leading_order() {
        // For small sigma sqrt(tau) the ATMF price is S sigma sqrt(tau) / sqrt(2 pi).
        let price = bs_atmf_price(100.0, 1e-4, 1.0);
        let leading = 100.0 * 1e-4 * 0.398_942_280_401_432_7;
        assert!((price / leading - 1.0).abs() < 1e-8);
    }

    #[test]
    fn within_no_arbitrage_bounds() {
        for i in 0..20 {
            let spot = 2500.0 + 150.0 * i as f64;
            for &tau in &[0.1, 1.0, 5.0] {
                let spec = OptionSpec::new(spot, 4000.0, 0.02, 0.3, tau).unwrap();
                let (lo, hi) = spec.no_arbitrage_bounds();
                let p = bs_price(&spec);
                assert!(p >= lo - 1e-9 && p <= hi, "spot {spot} tau {tau}: {p}");
            }
        }
    }
}
