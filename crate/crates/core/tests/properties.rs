use num_complex::Complex64;
use proptest::prelude::*;

use fmls::charfn::{char_fn, gil_pelaez_price, QuadratureSettings};
use fmls::greens::{cahen_mellin_exp, stable_density, MellinLineSettings};
use fmls::model::{martingale_drift, OptionSpec, StableModel};
use fmls::series::{atmf_half_gamma_term, atmf_taylor_term, price_series, series_term, Truncation};
use fmls::{bs_price, Error};

fn region() -> impl Strategy<Value = (OptionSpec, f64)> {
    (0.85..1.2f64, -0.02..0.05f64, 0.1..0.4f64, 0.5..3.0f64, 1.5..=2.0f64).prop_map(
        |(moneyness, rate, sigma, tau, alpha)| {
            (OptionSpec::new(4000.0 * moneyness, 4000.0, rate, sigma, tau).unwrap(), alpha)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn characteristic_function_bound_and_symmetry(
        sigma in 0.01..1.0f64, alpha in 1.05..=2.0f64, tau in 0.05..10.0f64, u in -50.0..50.0f64,
    ) {
        let mu = martingale_drift(sigma, alpha).unwrap();
        let phi = char_fn(Complex64::new(u, 0.0), mu, tau, alpha).unwrap();
        prop_assert!(phi.norm() <= 1.0 + 1e-15);
        let mirrored = char_fn(Complex64::new(-u, 0.0), mu, tau, alpha).unwrap();
        prop_assert!((mirrored - phi.conj()).norm() <= 1e-12);
        let martingale = char_fn(Complex64::new(0.0, -1.0), mu, tau, alpha).unwrap();
        prop_assert!((martingale - 1.0).norm() <= 1e-12);
    }

    #[test]
    fn series_price_within_bounds((spec, alpha) in region()) {
        let model = StableModel::new(alpha, &spec).unwrap();
        let result = price_series(&model, &spec, &Truncation::for_strike(spec.strike())).unwrap();
        let (lo, hi) = spec.no_arbitrage_bounds();
        prop_assert!(result.price >= lo - 1e-9 && result.price <= hi);
        prop_assert!(result.error_estimate >= 0.0);
    }

    #[test]
    fn series_and_fourier_agree((spec, alpha) in region()) {
        let model = StableModel::new(alpha, &spec).unwrap();
        let series = price_series(&model, &spec, &Truncation::for_strike(spec.strike())).unwrap().price;
        let fourier = gil_pelaez_price(&model, &spec, &QuadratureSettings::default()).unwrap();
        prop_assert!((series - fourier.price).abs() <= 0.01, "{} vs {}", series, fourier.price);
        let pi1 = fourier.diagnostics.get_number("pi1").unwrap();
        let pi2 = fourier.diagnostics.get_number("pi2").unwrap();
        prop_assert!((0.0..=1.0).contains(&pi1) && (0.0..=1.0).contains(&pi2));
    }

    #[test]
    fn gaussian_limit_is_black_scholes((spec, _) in region()) {
        let model = StableModel::new(2.0, &spec).unwrap();
        let series = price_series(&model, &spec, &Truncation::for_strike(spec.strike())).unwrap().price;
        prop_assert!((series - bs_price(&spec)).abs() <= 1e-6 * spec.strike());
    }

    #[test]
    fn poles_give_exact_zero_terms(k in 1usize..12, m in 1usize..20, alpha_index in 0usize..3) {
        // alpha = 2 or 1.5 or 4/3 makes (n - m)/alpha = k for integer n
        let (num, den) = [(2, 1), (3, 2), (4, 3)][alpha_index];
        let alpha = num as f64 / den as f64;
        prop_assume!(k % den == 0);
        let n = m + k * num / den;
        prop_assume!(n <= 64);
        let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
        let model = StableModel::new(alpha, &spec).unwrap();
        prop_assert_eq!(series_term(&model, &spec, n, m).unwrap(), 0.0);
    }

    #[test]
    fn atmf_forms_agree_termwise(n in 0usize..=20, x in 0.001..0.5f64) {
        let a = atmf_taylor_term(n, x);
        let b = atmf_half_gamma_term(n, x);
        prop_assert!((a - b).abs() <= 1e-14 * a.abs());
    }

    #[test]
    fn cahen_mellin_any_contour(x in 0.1..5.0f64, c in 0.25..2.0f64) {
        let v = cahen_mellin_exp(x, c, &MellinLineSettings::default()).unwrap();
        prop_assert!((v - (-x).exp()).abs() <= 1e-8);
    }

    #[test]
    fn density_is_non_negative(x in -30.0..8.0f64, alpha in 1.3..=2.0f64) {
        let g = stable_density(x, alpha, &MellinLineSettings::default()).unwrap();
        prop_assert!(g >= -1e-8);
    }
}

#[test]
fn invalid_alpha_is_rejected_everywhere() {
    let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
    for alpha in [0.9, 1.0, 1.0 + 1e-12, 2.0001, f64::NAN] {
        assert!(matches!(StableModel::new(alpha, &spec), Err(Error::Domain(_))), "{alpha}");
        assert!(matches!(martingale_drift(0.2, alpha), Err(Error::Domain(_))), "{alpha}");
        assert!(stable_density(0.5, alpha, &MellinLineSettings::default()).is_err());
    }
}
