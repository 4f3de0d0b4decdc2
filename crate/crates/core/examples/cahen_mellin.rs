//! e^{-x} recovered from the inverse Mellin transform of Gamma.

use fmls::{cahen_mellin_exp, MellinLineSettings};

fn main() -> fmls::Result<()> {
    let settings = MellinLineSettings::default();
    for x in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let v = cahen_mellin_exp(x, 1.0, &settings)?;
        println!("x {x:4}  {v:.12}  exp(-x) {:.12}", (-x).exp());
    }
    Ok(())
}
