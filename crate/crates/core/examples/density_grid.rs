//! Tabulate the Green's function on a grid and check its mass.
//!
//! With a heavy left tail the default grid is too narrow; `extending()`
//! widens it until the edge density is small.

use fmls::{build_density_grid, martingale_drift, GridSpec};

fn main() -> fmls::Result<()> {
    let (alpha, sigma, tau) = (1.5, 0.2, 1.0);
    let mu = martingale_drift(sigma, alpha)?;

    for spec in [GridSpec::default(), GridSpec::extending()] {
        let grid = build_density_grid(alpha, mu, tau, &spec)?;
        println!(
            "y in [{:.3}, {:.3}], {} points, mass {:.6}, extensions {}",
            grid.y_min(),
            grid.y_max(),
            grid.n_points(),
            grid.mass(),
            grid.extensions()
        );
        for w in grid.warnings() {
            println!("  warning: {w}");
        }
    }
    Ok(())
}
