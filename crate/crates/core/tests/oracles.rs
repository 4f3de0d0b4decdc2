//! Independent reference computations: direct Fourier inversion of the
//! stable characteristic function and closed forms, checked against the
//! library's engines.

use std::f64::consts::PI;

use num_complex::Complex64;

use fmls::charfn::gil_pelaez_price_default;
use fmls::greens::{build_density_grid, GridSpec, MellinLineSettings, StableDensity};
use fmls::model::{martingale_drift, OptionSpec};
use fmls::series::{atmf_bs_series, price_series_default};
use fmls::special::{ln_gamma_real, normal_cdf};
use fmls::{bs_atmf_price, bs_price};

/// g(X) = 1/pi int_0^inf Re[e^{-ivX} exp((iv)^alpha)] dv by composite Simpson.
fn fourier_density(x: f64, alpha: f64) -> f64 {
    let v_max = 60.0;
    let panels = 60_000;
    let h = v_max / panels as f64;
    let f = |v: f64| {
        let iv = Complex64::new(0.0, v);
        let stable = if v == 0.0 { Complex64::new(1.0, 0.0) } else { iv.powf(alpha).exp() };
        (Complex64::new(0.0, -v * x).exp() * stable).re
    };
    let mut sum = f(0.0) + f(v_max);
    for i in 1..panels {
        sum += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    sum * h / 3.0 / PI
}

#[test]
fn density_matches_fourier_inversion() {
    let d = StableDensity::new(1.7, MellinLineSettings::default()).unwrap();
    assert!((d.eval(0.5).unwrap() - fourier_density(0.5, 1.7)).abs() < 1e-6);
    for &alpha in &[1.5, 1.7, 1.9] {
        let d = StableDensity::new(alpha, MellinLineSettings::default()).unwrap();
        for &x in &[-8.0, -3.0, -1.0, -0.25, 0.0, 0.25, 1.0, 2.5, 4.0] {
            let oracle = fourier_density(x, alpha);
            let got = d.eval(x).unwrap();
            assert!((got - oracle).abs() < 1e-6, "alpha {alpha} X {x}: {got} vs {oracle}");
        }
    }
}

#[test]
fn origin_value_matches_closed_form() {
    for &alpha in &[1.3, 1.5, 1.7, 2.0] {
        let d = StableDensity::new(alpha, MellinLineSettings::default()).unwrap();
        let closed = 1.0 / (alpha * ln_gamma_real(1.0 - 1.0 / alpha).unwrap().exp());
        assert!((d.eval(0.0).unwrap() - closed).abs() < 1e-14);
        assert!((fourier_density(0.0, alpha) - closed).abs() < 1e-6);
    }
}

#[test]
fn heavy_left_tail_needs_wider_grid() {
    // the oracle puts visible density at the default edge, so a warning is due
    assert!(fourier_density(-12.0, 1.5) > 1e-4);
    let mu = martingale_drift(0.2, 1.5).unwrap();
    let grid = build_density_grid(1.5, mu, 1.0, &GridSpec { n_points: 401, ..GridSpec::default() }).unwrap();
    assert!(!grid.warnings().is_empty());

    assert!(fourier_density(-12.0, 2.0) < 1e-4);
    let mu = martingale_drift(0.2, 2.0).unwrap();
    let grid = build_density_grid(2.0, mu, 1.0, &GridSpec { n_points: 401, ..GridSpec::default() }).unwrap();
    assert!(grid.warnings().is_empty());
}

#[test]
fn fourier_price_is_black_scholes_at_alpha_two() {
    for &spot in &[3200.0, 3800.0, 4000.0, 4200.0, 4800.0] {
        for &tau in &[0.25, 1.0, 5.0] {
            let spec = OptionSpec::new(spot, 4000.0, 0.01, 0.2, tau).unwrap();
            let p = gil_pelaez_price_default(&spec, 2.0).unwrap().price;
            assert!((p - bs_price(&spec)).abs() < 1e-4 * 4000.0, "S {spot} tau {tau}");
        }
    }
}

#[test]
fn black_scholes_hand_computed() {
    // d1 = (log(S/K) + r tau)/(sigma sqrt tau) + sigma sqrt tau / 2
    let (s, k, r, sigma, tau) = (3800.0f64, 4000.0f64, 0.01f64, 0.2f64, 1.0f64);
    let v = sigma * tau.sqrt();
    let d1 = ((s / k).ln() + r * tau) / v + 0.5 * v;
    let expected = s * normal_cdf(d1) - k * (-r * tau).exp() * normal_cdf(d1 - v);
    let spec = OptionSpec::new(s, k, r, sigma, tau).unwrap();
    assert_eq!(bs_price(&spec), expected);
    assert!((expected - 235.514).abs() < 1e-3);
}

#[test]
fn atmf_reference_value() {
    // S = 100, sigma = 0.2, tau = 1: 100 (2 N(0.1) - 1)
    assert!((bs_atmf_price(100.0, 0.2, 1.0) - 7.965_567_455_405_797).abs() < 1e-12);
    for order in 6..12 {
        assert!((atmf_bs_series(100.0, 0.2, 1.0, order) - 7.965_567_455_405_797).abs() < 1e-10);
    }
}

#[test]
fn series_matches_high_precision_reference() {
    // full series summed in 40-digit arithmetic
    let otm = [284.520, 268.515, 256.035, 246.591, 239.827, 235.514];
    let itm = [547.669, 523.253, 502.535, 485.073, 470.556, 458.793];
    for (spot, row) in [(3800.0, otm), (4200.0, itm)] {
        let spec = OptionSpec::new(spot, 4000.0, 0.01, 0.2, 1.0).unwrap();
        for (alpha, want) in [1.5, 1.6, 1.7, 1.8, 1.9, 2.0].into_iter().zip(row) {
            let got = price_series_default(&spec, alpha).unwrap().price;
            assert!((got - want).abs() < 5e-4, "S {spot} alpha {alpha}: {got}");
        }
    }
}
