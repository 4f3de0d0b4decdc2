//! Pointwise evaluation of the standardized stable density.

use fmls::{MellinLineSettings, StableDensity};

fn main() -> fmls::Result<()> {
    for alpha in [1.5, 1.7, 2.0] {
        let g = StableDensity::new(alpha, MellinLineSettings::default())?;
        let row: Vec<String> = [-6.0, -2.0, 0.0, 1.0, 3.0]
            .iter()
            .map(|&x| g.eval(x).map(|v| format!("{v:.6}")))
            .collect::<fmls::Result<_>>()?;
        println!("alpha {alpha:.1}: {}", row.join("  "));
    }
    Ok(())
}
