//! Gil-Pelaez inversion of the characteristic function, next to the series.

use fmls::{gil_pelaez_price, price_series, OptionSpec, QuadratureSettings, StableModel, Truncation};

fn main() -> fmls::Result<()> {
    let spec = OptionSpec::new(4200.0, 4000.0, 0.01, 0.2, 1.0)?;
    for alpha in [1.5, 1.7, 1.9, 2.0] {
        let model = StableModel::new(alpha, &spec)?;
        let gp = gil_pelaez_price(&model, &spec, &QuadratureSettings::default())?;
        let series = price_series(&model, &spec, &Truncation::for_strike(spec.strike()))?;
        println!(
            "alpha {alpha:.1}  fourier {:10.4}  series {:10.4}  pi1 {:.6}  pi2 {:.6}",
            gp.price,
            series.price,
            gp.diagnostics.get_number("pi1").unwrap_or(f64::NAN),
            gp.diagnostics.get_number("pi2").unwrap_or(f64::NAN),
        );
    }
    Ok(())
}
