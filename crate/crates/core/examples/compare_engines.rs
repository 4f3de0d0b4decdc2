//! All engines side by side over a range of tail indices.

use fmls::{bs_price, build_density_grid, discretized_price, gil_pelaez_price, price_series};
use fmls::{GridSpec, OptionSpec, QuadratureSettings, StableModel, Truncation};

fn main() -> fmls::Result<()> {
    let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0)?;
    println!("{:>5} {:>10} {:>10} {:>10}", "alpha", "series", "fourier", "grid");
    for alpha in [1.5, 1.6, 1.7, 1.8, 1.9, 2.0] {
        let model = StableModel::new(alpha, &spec)?;
        let series = price_series(&model, &spec, &Truncation::for_strike(spec.strike()))?.price;
        let fourier = gil_pelaez_price(&model, &spec, &QuadratureSettings::default())?.price;
        let grid = build_density_grid(alpha, model.mu(), spec.tau(), &GridSpec::extending())?;
        let disc = discretized_price(&model, &spec, &grid)?.price;
        println!("{alpha:5.1} {series:10.4} {fourier:10.4} {disc:10.4}");
    }
    println!("black-scholes {:.4}", bs_price(&spec));
    Ok(())
}
