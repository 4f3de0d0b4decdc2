//! Price a European call under the stable model with the double series.

use fmls::{price_series, OptionSpec, StableModel, Truncation};

fn main() -> fmls::Result<()> {
    let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0)?;
    for alpha in [1.5, 1.6, 1.7, 1.8, 1.9, 2.0] {
        let model = StableModel::new(alpha, &spec)?;
        let res = price_series(&model, &spec, &Truncation::for_strike(spec.strike()))?;
        println!("alpha {alpha:.1}  price {:10.4}  terms {:4}  err {:.1e}", res.price, res.terms_used, res.error_estimate);
    }
    Ok(())
}
