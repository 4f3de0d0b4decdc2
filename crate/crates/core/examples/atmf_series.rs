//! At-the-money-forward Black-Scholes price as a short power series.

use fmls::{atmf_bs_series, atmf_bs_series_half_gamma, bs_atmf_price};

fn main() {
    let (spot, sigma, tau) = (100.0, 0.2, 1.0);
    let exact = bs_atmf_price(spot, sigma, tau);
    println!("closed form {exact:.15}");
    for order in 0..6 {
        let a = atmf_bs_series(spot, sigma, tau, order);
        let b = atmf_bs_series_half_gamma(spot, sigma, tau, order);
        println!("order {order}  {a:.15}  {b:.15}  diff {:.1e}", (a - exact).abs());
    }
}
