//! Price by integrating the payoff against a tabulated density.

use fmls::{build_density_grid, discretized_price, GridSpec, OptionSpec, StableModel};

fn main() -> fmls::Result<()> {
    let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0)?;
    let model = StableModel::new(1.8, &spec)?;
    for n_points in [501, 1001, 2001, 4001] {
        let grid_spec = GridSpec { n_points, ..GridSpec::extending() };
        let grid = build_density_grid(model.alpha(), model.mu(), spec.tau(), &grid_spec)?;
        let res = discretized_price(&model, &spec, &grid)?;
        println!("{n_points:5} points  price {:.6}  err {:.1e}", res.price, res.error_estimate);
    }
    Ok(())
}
