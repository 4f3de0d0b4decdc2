//! The `fmls` command line: pricing, convergence tables, engine comparison,
//! density export and implied volatility.
//!
//! Exit status is 0 on success, 2 for invalid input (including flag parse
//! errors) and 3 when an engine fails numerically.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::black_scholes::bs_price;
use crate::charfn::{gil_pelaez_price, QuadratureSettings};
use crate::error::{Error, Result};
use crate::greens::{build_density_grid, discretized_price, GridSpec, MellinLineSettings};
use crate::model::{martingale_drift, validate_alpha, Contract, OptionSpec, StableModel};
use crate::result::{DiagnosticValue, Diagnostics, Engine, PricingResult};
use crate::series::{convergence_table, implied_vol, price_series, SeriesTable, Truncation, MAX_INDEX};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fmls", version, about = "European call pricing under the FMLS model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Price one call with the chosen engine.
    Price(PriceArgs),
    /// Print the (n, m) term matrix and its cumulative column sums.
    Table(TableArgs),
    /// Price a grid of spots and stability indices with several engines.
    Compare(CompareArgs),
    /// Export the log-return density on a uniform grid as CSV.
    Density(DensityArgs),
    /// Invert the series price for sigma.
    ImpliedVol(ImpliedVolArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Series,
    Gilpelaez,
    Discretization,
    Bs,
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long)]
    spot: f64,
    #[arg(long)]
    strike: f64,
    /// Continuously compounded rate per year, as a decimal.
    #[arg(long, allow_hyphen_values = true)]
    rate: f64,
    /// Volatility per square-root year, as a decimal.
    #[arg(long)]
    sigma: f64,
    /// Maturity in years.
    #[arg(long)]
    tau: f64,
    /// Stability index in (1, 2].
    #[arg(long)]
    alpha: f64,
}

impl SpecArgs {
    fn spec(&self) -> Result<OptionSpec> {
        validate_alpha(self.alpha)?;
        OptionSpec::new(self.spot, self.strike, self.rate, self.sigma, self.tau)
    }
}

#[derive(Debug, Args)]
struct PriceArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, value_enum, default_value = "series")]
    engine: EngineArg,
    #[arg(long, default_value_t = MAX_INDEX)]
    nmax: usize,
    #[arg(long, default_value_t = MAX_INDEX)]
    mmax: usize,
    /// Series: column tolerance (currency, default 1e-8 K).
    /// Gil-Pelaez: absolute quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, default_value_t = 8)]
    nmax: usize,
    #[arg(long, default_value_t = 7)]
    mmax: usize,
    /// Fail unless the last column's absolute sum is below this (0 disables).
    #[arg(long, default_value_t = 0.0)]
    tol: f64,
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long, default_value_t = 4000.0)]
    strike: f64,
    #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
    rate: f64,
    #[arg(long, default_value_t = 0.2)]
    sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    #[arg(long, value_delimiter = ',', default_value = "3800,4200")]
    spots: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1.5,1.6,1.7,1.8,1.9,2.0")]
    alphas: Vec<f64>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "series,gilpelaez,discretization,bs")]
    engines: Vec<EngineArg>,
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    /// Grid half-width in units of (-mu tau)^{1/alpha}.
    #[arg(long, default_value_t = 12.0)]
    half_width: f64,
    #[arg(long, default_value_t = 4001)]
    points: usize,
    #[arg(long, default_value_t = 1e-4)]
    boundary_tol: f64,
    /// Widen a heavy edge (up to three doublings) instead of only warning.
    #[arg(long)]
    extend: bool,
    #[arg(long, default_value_t = 0.5)]
    c1: f64,
    #[arg(long, default_value_t = 400.0)]
    y_max: f64,
    #[arg(long, default_value_t = 0.2)]
    step: f64,
}

#[derive(Debug, Args)]
struct ImpliedVolArgs {
    #[arg(long)]
    spot: f64,
    #[arg(long)]
    strike: f64,
    #[arg(long, allow_hyphen_values = true)]
    rate: f64,
    #[arg(long)]
    tau: f64,
    #[arg(long)]
    alpha: f64,
    /// Observed call price.
    #[arg(long)]
    price: f64,
    /// Accepted price residual.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
}

/// Runs the command line on `args` (program name first) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_VALIDATION
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let outcome = match cli.command {
        Command::Price(a) => cmd_price(&a, err),
        Command::Table(a) => cmd_table(&a),
        Command::Compare(a) => cmd_compare(&a),
        Command::Density(a) => cmd_density(&a, err),
        Command::ImpliedVol(a) => cmd_implied_vol(&a),
    };
    match outcome {
        Ok(report) => {
            let _ = out.write_all(report.text.as_bytes());
            report.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_validation() {
                EXIT_VALIDATION
            } else {
                EXIT_NUMERICAL
            }
        }
    }
}

struct Report {
    text: String,
    status: i32,
}

impl From<String> for Report {
    fn from(text: String) -> Self {
        Self { text, status: EXIT_OK }
    }
}

/// 17 significant digits, which round-trips every f64.
pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_value(v: &DiagnosticValue) -> String {
    match v {
        DiagnosticValue::Number(x) => format_number(*x),
        DiagnosticValue::Count(n) => n.to_string(),
        DiagnosticValue::Flag(b) => b.to_string(),
        DiagnosticValue::Text(s) => json_string(s),
    }
}

fn plain_value(v: &DiagnosticValue) -> String {
    match v {
        DiagnosticValue::Number(x) => format_number(*x),
        DiagnosticValue::Count(n) => n.to_string(),
        DiagnosticValue::Flag(b) => b.to_string(),
        DiagnosticValue::Text(s) => s.clone(),
    }
}

fn diagnostics_json(d: &Diagnostics) -> String {
    let fields: Vec<String> = d.iter().map(|(k, v)| format!("{}:{}", json_string(k), json_value(v))).collect();
    format!("{{{}}}", fields.join(","))
}

/// `{price, engine, terms_used, error_estimate, diagnostics{...}}` on one line.
pub fn result_json(r: &PricingResult) -> String {
    format!(
        "{{\"price\":{},\"engine\":{},\"terms_used\":{},\"error_estimate\":{},\"diagnostics\":{}}}\n",
        format_number(r.price),
        json_string(r.engine.as_str()),
        r.terms_used,
        format_number(r.error_estimate),
        diagnostics_json(&r.diagnostics)
    )
}

fn result_csv(r: &PricingResult) -> String {
    let mut header = vec!["price".to_string(), "engine".into(), "terms_used".into(), "error_estimate".into()];
    let mut row = vec![
        format_number(r.price),
        r.engine.as_str().to_string(),
        r.terms_used.to_string(),
        format_number(r.error_estimate),
    ];
    for (k, v) in r.diagnostics.iter() {
        header.push(k.to_string());
        row.push(plain_value(v));
    }
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn result_table(r: &PricingResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<16}{:.6}", "price", r.price);
    let _ = writeln!(s, "{:<16}{}", "engine", r.engine);
    let _ = writeln!(s, "{:<16}{}", "terms_used", r.terms_used);
    let _ = writeln!(s, "{:<16}{:.3e}", "error_estimate", r.error_estimate);
    for (k, v) in r.diagnostics.iter() {
        let _ = writeln!(s, "  {k:<24}{}", plain_value(v));
    }
    s
}

fn black_scholes_result(spec: &OptionSpec) -> PricingResult {
    PricingResult {
        price: bs_price(spec),
        engine: Engine::BlackScholes,
        terms_used: 0,
        error_estimate: 0.0,
        diagnostics: Diagnostics::new(),
    }
}

/// Prices with one engine. Density-grid warnings are returned alongside.
fn price_with(
    engine: EngineArg,
    spec: &OptionSpec,
    alpha: f64,
    trunc: &Truncation,
    quad: &QuadratureSettings,
) -> Result<(PricingResult, Vec<String>)> {
    if engine == EngineArg::Bs {
        return Ok((black_scholes_result(spec), Vec::new()));
    }
    let model = StableModel::new(alpha, spec)?;
    match engine {
        EngineArg::Series => Ok((price_series(&model, spec, trunc)?, Vec::new())),
        EngineArg::Gilpelaez => Ok((gil_pelaez_price(&model, spec, quad)?, Vec::new())),
        EngineArg::Discretization => {
            let grid = build_density_grid(alpha, model.mu(), model.tau(), &GridSpec::extending())?;
            let result = discretized_price(&model, spec, &grid)?;
            Ok((result, grid.warnings().to_vec()))
        }
        EngineArg::Bs => unreachable!("handled above"),
    }
}

fn cmd_price(a: &PriceArgs, err: &mut dyn Write) -> Result<Report> {
    let spec = a.spec.spec()?;
    let tail_tol = a.tol.unwrap_or(crate::series::DEFAULT_RELATIVE_TAIL_TOL * spec.strike());
    let trunc = Truncation::new(a.nmax, a.mmax, tail_tol)?;
    let mut quad = QuadratureSettings::default();
    if let Some(tol) = a.tol {
        quad.abs_tol = tol;
    }
    let (result, warnings) = price_with(a.engine, &spec, a.spec.alpha, &trunc, &quad)?;
    for w in warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(match a.format {
        OutputFormat::Table => result_table(&result),
        OutputFormat::Json => result_json(&result),
        OutputFormat::Csv => result_csv(&result),
    }
    .into())
}

fn table_text(t: &SeriesTable) -> String {
    let mut s = String::new();
    let _ = write!(s, "{:>6}", "n\\m");
    for m in 1..=t.m_max() {
        let _ = write!(s, "{m:>13}");
    }
    s.push('\n');
    for n in 0..=t.n_max() {
        let _ = write!(s, "{n:>6}");
        for m in 1..=t.m_max() {
            let _ = write!(s, "{:>13.4}", t.term(n, m));
        }
        s.push('\n');
    }
    let _ = write!(s, "{:>6}", "Call");
    for m in 1..=t.m_max() {
        let _ = write!(s, "{:>13.4}", t.partial_sum(m));
    }
    s.push('\n');
    s
}

fn table_csv(t: &SeriesTable) -> String {
    let mut s = String::from("n");
    for m in 1..=t.m_max() {
        let _ = write!(s, ",m{m}");
    }
    s.push('\n');
    for n in 0..=t.n_max() {
        let _ = write!(s, "{n}");
        for m in 1..=t.m_max() {
            let _ = write!(s, ",{}", format_number(t.term(n, m)));
        }
        s.push('\n');
    }
    s.push_str("call");
    for m in 1..=t.m_max() {
        let _ = write!(s, ",{}", format_number(t.partial_sum(m)));
    }
    s.push('\n');
    s
}

fn json_array(xs: impl IntoIterator<Item = f64>) -> String {
    let items: Vec<String> = xs.into_iter().map(format_number).collect();
    format!("[{}]", items.join(","))
}

fn table_json(t: &SeriesTable) -> String {
    let rows: Vec<String> = t.terms().iter().map(|row| json_array(row.iter().copied())).collect();
    format!(
        "{{\"terms\":[{}],\"partial_sums\":{},\"converged_price\":{}}}\n",
        rows.join(","),
        json_array(t.partial_sums().iter().copied()),
        format_number(t.converged_price())
    )
}

fn cmd_table(a: &TableArgs) -> Result<Report> {
    let spec = a.spec.spec()?;
    let model = StableModel::new(a.spec.alpha, &spec)?;
    let trunc = Truncation::new(a.nmax, a.mmax, a.tol)?;
    let table = convergence_table(&model, &spec, &trunc)?;
    Ok(match a.format {
        OutputFormat::Table => table_text(&table),
        OutputFormat::Json => table_json(&table),
        OutputFormat::Csv => table_csv(&table),
    }
    .into())
}

fn engine_label(e: EngineArg) -> &'static str {
    match e {
        EngineArg::Series => Engine::Series.as_str(),
        EngineArg::Gilpelaez => Engine::GilPelaez.as_str(),
        EngineArg::Discretization => Engine::Discretization.as_str(),
        EngineArg::Bs => Engine::BlackScholes.as_str(),
    }
}

fn cmd_compare(a: &CompareArgs) -> Result<Report> {
    for &alpha in &a.alphas {
        validate_alpha(alpha)?;
    }
    let specs = a
        .spots
        .iter()
        .map(|&s| OptionSpec::new(s, a.strike, a.rate, a.sigma, a.tau))
        .collect::<Result<Vec<_>>>()?;
    let quad = QuadratureSettings::default();
    let mut cells = Vec::new();
    for spec in &specs {
        let trunc = Truncation::for_strike(spec.strike());
        for &engine in &a.engines {
            for &alpha in &a.alphas {
                let cell = price_with(engine, spec, alpha, &trunc, &quad).map(|(r, _)| r.price);
                cells.push((spec.spot(), engine, alpha, cell));
            }
        }
    }
    let failed = cells.iter().any(|c| c.3.is_err());

    let mut s = String::new();
    match a.format {
        OutputFormat::Table => {
            for spec in &specs {
                let _ = writeln!(s, "S = {}", spec.spot());
                let _ = write!(s, "{:<16}", "engine");
                for alpha in &a.alphas {
                    let _ = write!(s, "{alpha:>11}");
                }
                s.push('\n');
                for &engine in &a.engines {
                    let _ = write!(s, "{:<16}", engine_label(engine));
                    for (_, _, _, cell) in cells
                        .iter()
                        .filter(|c| c.0 == spec.spot() && c.1 == engine)
                    {
                        match cell {
                            Ok(p) => {
                                let _ = write!(s, "{p:>11.3}");
                            }
                            Err(_) => {
                                let _ = write!(s, "{:>11}", "error");
                            }
                        }
                    }
                    s.push('\n');
                }
                for (_, engine, alpha, cell) in cells.iter().filter(|c| c.0 == spec.spot()) {
                    if let Err(e) = cell {
                        let _ = writeln!(s, "  {} at alpha {alpha}: {e}", engine_label(*engine));
                    }
                }
            }
        }
        OutputFormat::Csv => {
            s.push_str("spot,engine,alpha,price,error\n");
            for (spot, engine, alpha, cell) in &cells {
                let (price, error) = match cell {
                    Ok(p) => (format_number(*p), String::new()),
                    Err(e) => (String::new(), json_string(&e.to_string())),
                };
                let _ = writeln!(s, "{spot},{},{alpha},{price},{error}", engine_label(*engine));
            }
        }
        OutputFormat::Json => {
            let items: Vec<String> = cells
                .iter()
                .map(|(spot, engine, alpha, cell)| {
                    let (price, error) = match cell {
                        Ok(p) => (format_number(*p), "null".to_string()),
                        Err(e) => ("null".to_string(), json_string(&e.to_string())),
                    };
                    format!(
                        "{{\"spot\":{},\"engine\":{},\"alpha\":{},\"price\":{price},\"error\":{error}}}",
                        format_number(*spot),
                        json_string(engine_label(*engine)),
                        format_number(*alpha)
                    )
                })
                .collect();
            let _ = writeln!(s, "{{\"cells\":[{}]}}", items.join(","));
        }
    }
    Ok(Report {
        text: s,
        status: if failed { EXIT_NUMERICAL } else { EXIT_OK },
    })
}

fn cmd_density(a: &DensityArgs, err: &mut dyn Write) -> Result<Report> {
    let mu = martingale_drift(a.sigma, a.alpha)?;
    let grid_spec = GridSpec {
        half_width: a.half_width,
        n_points: a.points,
        boundary_tol: a.boundary_tol,
        auto_extend: a.extend,
        line: MellinLineSettings {
            c1: a.c1,
            y_max: a.y_max,
            step: a.step,
        },
        ..GridSpec::default()
    };
    if !(a.tau > 0.0 && a.tau.is_finite()) {
        return Err(Error::InvalidInput(format!("tau must be finite and > 0, got {}", a.tau)));
    }
    let grid = build_density_grid(a.alpha, mu, a.tau, &grid_spec)?;
    for w in grid.warnings() {
        let _ = writeln!(err, "warning: {w}");
    }
    let mut s = String::from("y,density\n");
    for (y, p) in grid.points() {
        let _ = writeln!(s, "{},{}", format_number(y), format_number(p));
    }
    Ok(s.into())
}

fn cmd_implied_vol(a: &ImpliedVolArgs) -> Result<Report> {
    let contract = Contract::new(a.spot, a.strike, a.rate, a.tau)?;
    let sigma = implied_vol(&contract, a.alpha, a.price, a.tol)?;
    Ok(match a.format {
        OutputFormat::Table => format!("sigma {}\n", format_number(sigma)),
        OutputFormat::Json => format!("{{\"sigma\":{}}}\n", format_number(sigma)),
        OutputFormat::Csv => format!("sigma\n{}\n", format_number(sigma)),
    }
    .into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("fmls").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn number_format_round_trips() {
        for x in [256.03507, -1e-300, 0.1 + 0.2, f64::MAX] {
            assert_eq!(format_number(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_number(f64::NAN), "null");
    }

    #[test]
    fn json_escapes() {
        assert_eq!(json_string("a\"b\\c\n"), "\"a\\\"b\\\\c\\n\"");
    }

    #[test]
    fn unknown_flag_is_validation_error() {
        let (code, _, err) = run_capture(&["price", "--bogus", "1"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(!err.is_empty());
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("implied-vol"));
    }
}
