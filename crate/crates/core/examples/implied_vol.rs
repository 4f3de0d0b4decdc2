//! Recover sigma from a stable-model price.

use fmls::series::price_series_default;
use fmls::{implied_vol, OptionSpec};

fn main() -> fmls::Result<()> {
    let spec = OptionSpec::new(4000.0, 4000.0, 0.01, 0.25, 0.5)?;
    let alpha = 1.7;
    let price = price_series_default(&spec, alpha)?.price;
    let sigma = implied_vol(&spec.contract(), alpha, price, 1e-10)?;
    println!("price {price:.6} -> sigma {sigma:.10}");
    Ok(())
}
