//! Option pricing under the finite moment log-stable (FMLS) model.
//!
//! Three independent engines price a European call:
//!
//! * [`series::price_series`], the double residue series in powers of the
//!   log-forward-moneyness and of `(-mu tau)^{1/alpha}`;
//! * [`charfn::gil_pelaez_price`], Fourier inversion of the characteristic
//!   function;
//! * [`greens::discretized_price`], the payoff convolved with the stable
//!   Green function sampled by Mellin-Barnes quadrature.
//!
//! At `alpha = 2` all of them reduce to [`black_scholes::bs_price`].

pub mod black_scholes;
pub mod charfn;
pub mod cli;
pub mod error;
pub mod greens;
pub mod model;
pub mod quadrature;
pub mod result;
pub mod series;
pub mod special;
pub mod summation;

pub use black_scholes::{bs_atmf_price, bs_price};
pub use charfn::{char_fn, gil_pelaez_price, QuadratureSettings};
pub use error::{Error, Result};
pub use greens::{
    build_density_grid, cahen_mellin_exp, discretized_price, stable_density, DensityGrid, GridSpec,
    MellinLineSettings, StableDensity,
};
pub use model::{martingale_drift, Contract, OptionSpec, StableModel};
pub use result::{DiagnosticValue, Diagnostics, Engine, PricingResult};
pub use series::{
    atmf_bs_series, atmf_bs_series_half_gamma, convergence_table, implied_vol, price_series, series_term,
    SeriesTable, Truncation,
};
