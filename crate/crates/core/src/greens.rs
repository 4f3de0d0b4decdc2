//! The stable Green function by Mellin-Barnes quadrature along a vertical
//! line, and the pricer that convolves the payoff against it on a grid.
//!
//! For the standardized variable `X` the density is
//!
//! ```text
//! X > 0:  g(X) = 1/(2 pi alpha) int Gamma(1-t) / Gamma(1-t/alpha) X^{t-1} dy
//! X < 0:  g(X) = 1/(2 pi alpha) int Gamma(t/alpha) Gamma(1-t) sin(pi rho t)/pi |X|^{t-1} dy
//! ```
//!
//! with `t = c1 + iy` and `rho = (alpha-1)/alpha`. The log-return over `tau`
//! has density `(1/s) g(y/s)` with `s = (-mu tau)^{1/alpha}`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{validate_alpha, OptionSpec, StableModel};
use crate::result::{Diagnostics, Engine, PricingResult};
use crate::special::{ln_gamma_complex, ln_gamma_real, ln_sin_pi, ComplexValue};
use crate::summation::KahanSum;

/// Step halvings tried after the base step.
const REFINEMENTS: u32 = 4;
/// Accepted change between successive step halvings.
const LEVEL_TOL: f64 = 1e-10;
/// Largest imaginary part tolerated in a real-valued line integral.
const IMAG_TOL: f64 = 1e-10;
/// Largest negative density tolerated.
pub const NEGATIVITY_TOL: f64 = 1e-8;
/// The line is cut once the kernel stays below this fraction of its peak.
const CUTOFF: f64 = 1e-17;
/// Kernel size at `y_max`, relative to the peak, above which truncation fails.
const TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinLineSettings {
    /// Abscissa of the contour, inside (0, 1).
    pub c1: f64,
    /// Truncation of the imaginary part.
    pub y_max: f64,
    /// Base trapezoid step; halved up to four times.
    pub step: f64,
}

impl Default for MellinLineSettings {
    fn default() -> Self {
        Self {
            c1: 0.5,
            y_max: 400.0,
            step: 0.2,
        }
    }
}

impl MellinLineSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.c1 > 0.0 && self.c1 < 1.0) {
            return Err(Error::InvalidInput(format!("contour abscissa c1 = {} must lie in (0, 1)", self.c1)));
        }
        self.validate_line()
    }

    fn validate_line(&self) -> Result<()> {
        if !(self.y_max.is_finite() && self.y_max > 0.0 && self.step > 0.0 && self.step < self.y_max) {
            return Err(Error::InvalidInput(format!(
                "need 0 < step < y_max, got step = {} and y_max = {}",
                self.step, self.y_max
            )));
        }
        Ok(())
    }
}

/// Kernel values on the contour at the finest step, one vector per half-line.
#[derive(Debug, Clone)]
struct LineKernel {
    c: f64,
    finest: f64,
    upper: Vec<Complex64>,
    lower: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy)]
struct LineSum {
    value: Complex64,
}

impl LineKernel {
    fn build<F>(ln_kernel: F, c: f64, settings: &MellinLineSettings) -> Result<Self>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let finest = settings.step / f64::from(1u32 << REFINEMENTS);
        let upper = Self::half_line(&ln_kernel, c, finest, 1.0, settings.y_max)?;
        let lower = Self::half_line(&ln_kernel, c, finest, -1.0, settings.y_max)?;
        Ok(Self { c, finest, upper, lower })
    }

    fn half_line<F>(ln_kernel: &F, c: f64, h: f64, direction: f64, y_max: f64) -> Result<Vec<Complex64>>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let run_needed = (1.0 / h).ceil() as usize;
        let mut values = Vec::new();
        let mut peak = 0.0f64;
        let mut run = 0;
        let mut j = 0usize;
        loop {
            let y = j as f64 * h;
            if y > y_max {
                let tail = values.last().map_or(0.0, |v: &Complex64| v.norm()) / peak;
                if tail > TAIL_TOL {
                    return Err(Error::ContourTruncation { y_max, tail });
                }
                return Ok(values);
            }
            let k = ln_kernel(Complex64::new(c, direction * y))?.exp();
            let size = k.norm();
            if !size.is_finite() {
                return Err(Error::Range(format!("contour kernel overflows at y = {}", direction * y)));
            }
            peak = peak.max(size);
            values.push(k);
            run = if size < CUTOFF * peak { run + 1 } else { 0 };
            if run >= run_needed {
                return Ok(values);
            }
            j += 1;
        }
    }

    /// Trapezoid sums of `kernel(t) exp(a t + b)` over the line, divided by
    /// `2 pi`, with step halving until successive levels agree.
    fn integrate(&self, a: f64, b: f64) -> Result<LineSum> {
        let scale = (a * self.c + b).exp() / (2.0 * PI);
        let mut re = KahanSum::new();
        let mut im = KahanSum::new();
        re.add(self.upper[0].re);
        im.add(self.upper[0].im);
        let mut previous: Option<Complex64> = None;
        let mut change = f64::INFINITY;
        for level in 0..=REFINEMENTS {
            let stride = 1usize << (REFINEMENTS - level);
            let step_by = if level == 0 { stride } else { 2 * stride };
            for (side, direction) in [(&self.upper, 1.0), (&self.lower, -1.0)] {
                for j in (stride..side.len()).step_by(step_by) {
                    let (s, co) = (direction * a * j as f64 * self.finest).sin_cos();
                    let term = side[j] * Complex64::new(co, s);
                    re.add(term.re);
                    im.add(term.im);
                }
            }
            let h = self.finest * stride as f64;
            let value = Complex64::new(re.value(), im.value()) * (h * scale);
            // a coarse step aliases the oscillation e^{iay}; such levels are not compared
            if h * a.abs() > FRAC_PI_2 {
                continue;
            }
            if let Some(prev) = previous {
                change = (value - prev).norm();
                if change < LEVEL_TOL {
                    return Ok(LineSum { value });
                }
            }
            previous = Some(value);
        }
        let value = previous.unwrap_or_default();
        Err(Error::Quadrature {
            message: format!("contour step halving did not settle after {REFINEMENTS} halvings"),
            partial: value.re,
            error_estimate: change,
        })
    }
}

fn real_part(sum: LineSum, what: &str) -> Result<f64> {
    if sum.value.im.abs() >= IMAG_TOL {
        return Err(Error::Quadrature {
            message: format!("{what}: imaginary residue {:.3e} on a real integral", sum.value.im),
            partial: sum.value.re,
            error_estimate: sum.value.im.abs(),
        });
    }
    Ok(sum.value.re)
}

fn positive_branch_kernel(alpha: f64) -> impl Fn(Complex64) -> Result<Complex64> {
    move |t| Ok(ln_gamma_complex(1.0 - t)? - ln_gamma_complex(1.0 - t / alpha)?)
}

fn negative_branch_kernel(alpha: f64) -> impl Fn(Complex64) -> Result<Complex64> {
    let rho = (alpha - 1.0) / alpha;
    move |t| Ok(ln_gamma_complex(t / alpha)? + ln_gamma_complex(1.0 - t)? + ln_sin_pi(rho * t) - PI.ln())
}

/// g at the origin, 1 / (alpha Gamma(1 - 1/alpha)).
pub fn density_at_origin(alpha: f64) -> Result<f64> {
    validate_alpha(alpha)?;
    Ok((-ln_gamma_real(1.0 - 1.0 / alpha)?).exp() / alpha)
}

/// The standardized stable density with both contour kernels precomputed,
/// for evaluating many points.
#[derive(Debug, Clone)]
pub struct StableDensity {
    alpha: f64,
    settings: MellinLineSettings,
    at_origin: f64,
    positive: LineKernel,
    negative: LineKernel,
}

impl StableDensity {
    pub fn new(alpha: f64, settings: MellinLineSettings) -> Result<Self> {
        validate_alpha(alpha)?;
        settings.validate()?;
        Ok(Self {
            alpha,
            settings,
            at_origin: density_at_origin(alpha)?,
            positive: LineKernel::build(positive_branch_kernel(alpha), settings.c1, &settings)?,
            negative: LineKernel::build(negative_branch_kernel(alpha), settings.c1, &settings)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn settings(&self) -> &MellinLineSettings {
        &self.settings
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("density argument must be finite, got {x}")));
        }
        if x == 0.0 {
            return Ok(self.at_origin);
        }
        let kernel = if x > 0.0 { &self.positive } else { &self.negative };
        let ln_x = x.abs().ln();
        let sum = kernel.integrate(ln_x, -ln_x)?;
        let value = real_part(sum, "stable density")? / self.alpha;
        if value < -NEGATIVITY_TOL {
            return Err(Error::NegativeDensity { x, value });
        }
        Ok(value)
    }
}

/// Standardized stable density g_alpha(X), whose characteristic function
/// is exp((iv)^alpha).
pub fn stable_density(x: f64, alpha: f64, settings: &MellinLineSettings) -> Result<f64> {
    validate_alpha(alpha)?;
    settings.validate()?;
    if !x.is_finite() {
        return Err(Error::Domain(format!("density argument must be finite, got {x}")));
    }
    if x == 0.0 {
        return density_at_origin(alpha);
    }
    let kernel = if x > 0.0 {
        LineKernel::build(positive_branch_kernel(alpha), settings.c1, settings)?
    } else {
        LineKernel::build(negative_branch_kernel(alpha), settings.c1, settings)?
    };
    let ln_x = x.abs().ln();
    let value = real_part(kernel.integrate(ln_x, -ln_x)?, "stable density")? / alpha;
    if value < -NEGATIVITY_TOL {
        return Err(Error::NegativeDensity { x, value });
    }
    Ok(value)
}

/// e^{-x} as the line integral of Gamma(s) x^{-s} on Re s = c. A check on
/// the contour engine; `settings.c1` is not used.
pub fn cahen_mellin_exp(x: f64, c: f64, settings: &MellinLineSettings) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Domain(format!("Re s = {c} is outside the strip Re s > 0")));
    }
    settings.validate_line()?;
    let kernel = LineKernel::build(|s: ComplexValue| ln_gamma_complex(s), c, settings)?;
    real_part(kernel.integrate(-x.ln(), 0.0)?, "Cahen-Mellin integral")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Half-width of the initial grid in units of the scale (-mu tau)^{1/alpha}.
    pub half_width: f64,
    pub n_points: usize,
    /// Largest standardized density g allowed at either edge.
    pub boundary_tol: f64,
    /// Double the offending side, at fixed step, while an edge is too heavy.
    pub auto_extend: bool,
    pub max_extensions: usize,
    pub line: MellinLineSettings,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            half_width: 12.0,
            n_points: 4001,
            boundary_tol: 1e-4,
            auto_extend: false,
            max_extensions: 3,
            line: MellinLineSettings::default(),
        }
    }
}

impl GridSpec {
    /// Default grid with automatic extension, as used by the pricer.
    pub fn extending() -> Self {
        Self {
            auto_extend: true,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(Error::InvalidInput(format!("half_width must be positive, got {}", self.half_width)));
        }
        if self.n_points < 3 {
            return Err(Error::InvalidInput(format!("need at least 3 grid points, got {}", self.n_points)));
        }
        if !(self.boundary_tol > 0.0) {
            return Err(Error::InvalidInput(format!("boundary_tol must be positive, got {}", self.boundary_tol)));
        }
        self.line.validate()
    }
}

/// Uniform samples of the log-return density `(1/s) g(y/s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    alpha: f64,
    scale: f64,
    y_min: f64,
    dy: f64,
    values: Vec<f64>,
    extensions: usize,
    warnings: Vec<String>,
}

impl DensityGrid {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// s = (-mu tau)^{1/alpha}.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn y_min(&self) -> f64 {
        self.y_min
    }

    pub fn y_max(&self) -> f64 {
        self.y(self.values.len() - 1)
    }

    pub fn n_points(&self) -> usize {
        self.values.len()
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn y(&self, i: usize) -> f64 {
        self.y_min + i as f64 * self.dy
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// (y, density) pairs.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &v)| (self.y(i), v))
    }

    /// Number of edge doublings applied.
    pub fn extensions(&self) -> usize {
        self.extensions
    }

    /// Boundary-mass messages, in the order they arose.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Trapezoid integral of the samples.
    pub fn mass(&self) -> f64 {
        let mut sum = KahanSum::new();
        sum.extend(self.values.iter().copied());
        let ends = 0.5 * (self.values[0] + self.values[self.values.len() - 1]);
        (sum.value() - ends) * self.dy
    }
}

fn sample(density: &StableDensity, scale: f64, ys: impl Iterator<Item = f64>) -> Result<Vec<f64>> {
    ys.map(|y| density.eval(y / scale).map(|g| g / scale)).collect()
}

/// Samples the log-return density on `[-h s, h s]`, `s = (-mu tau)^{1/alpha}`.
pub fn build_density_grid(alpha: f64, mu: f64, tau: f64, grid: &GridSpec) -> Result<DensityGrid> {
    validate_alpha(alpha)?;
    grid.validate()?;
    if !(mu < 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!("drift mu must be negative, got {mu}")));
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    let scale = (-mu * tau).powf(1.0 / alpha);
    let density = StableDensity::new(alpha, grid.line)?;
    let half = grid.half_width * scale;
    let dy = 2.0 * half / (grid.n_points - 1) as f64;
    let mut left_count = (grid.n_points - 1) / 2;
    let right_count = grid.n_points - 1 - left_count;
    let y_min = -(left_count as f64) * dy;
    let mut values = sample(&density, scale, (0..grid.n_points).map(|i| y_min + i as f64 * dy))?;
    let mut out = DensityGrid {
        alpha,
        scale,
        y_min,
        dy,
        values: Vec::new(),
        extensions: 0,
        warnings: Vec::new(),
    };
    let mut right_len = right_count;

    loop {
        let left_g = values[0] * scale;
        let right_g = values[values.len() - 1] * scale;
        let left_heavy = left_g > grid.boundary_tol;
        let right_heavy = right_g > grid.boundary_tol;
        for (heavy, g, side, y) in [
            (left_heavy, left_g, "left", -(left_count as f64) * dy),
            (right_heavy, right_g, "right", right_len as f64 * dy),
        ] {
            if heavy {
                out.warnings.push(format!(
                    "boundary mass: density g = {g:.3e} at the {side} edge X = {:.3} exceeds boundary_tol {:.1e}",
                    y / scale,
                    grid.boundary_tol
                ));
            }
        }
        if !(left_heavy || right_heavy) || !grid.auto_extend || out.extensions >= grid.max_extensions {
            break;
        }
        out.extensions += 1;
        if left_heavy {
            let first = left_count + 1;
            left_count *= 2;
            let extra = sample(&density, scale, (first..=left_count).rev().map(|k| -(k as f64) * dy))?;
            values.splice(0..0, extra);
            out.warnings
                .push(format!("extended left edge to X = {:.3}", -(left_count as f64) * dy / scale));
        }
        if right_heavy {
            let first = right_len + 1;
            right_len *= 2;
            let extra = sample(&density, scale, (first..=right_len).map(|k| k as f64 * dy))?;
            values.extend(extra);
            out.warnings
                .push(format!("extended right edge to X = {:.3}", right_len as f64 * dy / scale));
        }
    }
    out.y_min = -(left_count as f64) * dy;
    out.values = values;
    Ok(out)
}

/// Discounted call price as a trapezoid sum of payoff times density over
/// the grid. In the cell holding the payoff kink only the part above the
/// kink is summed.
pub fn discretized_price(model: &StableModel, spec: &OptionSpec, grid: &DensityGrid) -> Result<PricingResult> {
    model.check_matches(spec)?;
    let scale = model.scale();
    if model.alpha() != grid.alpha() || (scale - grid.scale()).abs() > 1e-12 * scale {
        return Err(Error::InvalidInput(format!(
            "density grid (alpha {}, scale {}) does not match the model (alpha {}, scale {scale})",
            grid.alpha(),
            grid.scale(),
            model.alpha()
        )));
    }
    let drift = (spec.rate() + model.mu()) * spec.tau();
    let kink = (spec.strike() / spec.spot()).ln() - drift;
    let payoff = |y: f64| spec.spot() * (drift + y).exp() - spec.strike();

    let fine = cell_sum(grid, 1, kink, &payoff);
    let coarse = cell_sum(grid, 2, kink, &payoff);
    let discount = (-spec.rate() * spec.tau()).exp();

    let mut diagnostics = Diagnostics::new();
    diagnostics.count("grid_points", grid.n_points());
    diagnostics.number("dy", grid.dy());
    diagnostics.number("y_min", grid.y_min());
    diagnostics.number("y_max", grid.y_max());
    diagnostics.number("grid_mass", grid.mass());
    diagnostics.number("kink_y", kink);
    diagnostics.count("extensions", grid.extensions());
    diagnostics.flag("boundary_warning", !grid.warnings().is_empty());

    Ok(PricingResult {
        price: (discount * fine).max(0.0),
        engine: Engine::Discretization,
        terms_used: grid.n_points(),
        error_estimate: discount * (fine - coarse).abs() / 3.0,
        diagnostics,
    })
}

/// Trapezoid sum over every `stride`-th grid point.
fn cell_sum(grid: &DensityGrid, stride: usize, kink: f64, payoff: &impl Fn(f64) -> f64) -> f64 {
    let values = grid.values();
    let h = grid.dy() * stride as f64;
    let mut sum = KahanSum::new();
    let mut i = 0;
    while i + stride < values.len() {
        let (y0, y1) = (grid.y(i), grid.y(i + stride));
        let (p0, p1) = (values[i], values[i + stride]);
        if y0 >= kink {
            sum.add(0.5 * h * (payoff(y0) * p0 + payoff(y1) * p1));
        } else if y1 > kink {
            // payoff vanishes at the kink
            sum.add(0.5 * (y1 - kink) * payoff(y1) * p1);
        }
        i += stride;
    }
    sum.value()
}

/// Discretization price with the default extending grid.
pub fn discretized_price_default(spec: &OptionSpec, alpha: f64) -> Result<PricingResult> {
    let model = StableModel::new(alpha, spec)?;
    let grid = build_density_grid(alpha, model.mu(), model.tau(), &GridSpec::extending())?;
    discretized_price(&model, spec, &grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heat_kernel(x: f64) -> f64 {
        (-x * x / 4.0).exp() / (2.0 * PI.sqrt())
    }

    #[test]
    fn settings_validation() {
        assert!(MellinLineSettings::default().validate().is_ok());
        for bad in [
            MellinLineSettings { c1: 1.0, ..Default::default() },
            MellinLineSettings { c1: 0.0, ..Default::default() },
            MellinLineSettings { step: 500.0, ..Default::default() },
            MellinLineSettings { y_max: f64::INFINITY, ..Default::default() },
        ] {
            assert!(matches!(bad.validate(), Err(Error::InvalidInput(_))), "{bad:?}");
        }
    }

    #[test]
    fn cahen_mellin_reproduces_exponential() {
        let s = MellinLineSettings::default();
        assert!((cahen_mellin_exp(1.0, 0.5, &s).unwrap() - (-1.0f64).exp()).abs() < 1e-8);
        assert!((cahen_mellin_exp(0.5, 1.0, &s).unwrap() - (-0.5f64).exp()).abs() < 1e-8);
        assert!(matches!(cahen_mellin_exp(1.0, -0.5, &s), Err(Error::Domain(_))));
    }

    #[test]
    fn gaussian_case_is_heat_kernel() {
        let d = StableDensity::new(2.0, MellinLineSettings::default()).unwrap();
        for i in -12..=12 {
            let x = 0.5 * i as f64;
            assert!((d.eval(x).unwrap() - heat_kernel(x)).abs() < 1e-8, "X = {x}");
        }
    }

    #[test]
    fn origin_is_continuous() {
        let d = StableDensity::new(1.7, MellinLineSettings::default()).unwrap();
        let at_zero = d.eval(0.0).unwrap();
        for x in [1e-4, -1e-4] {
            assert!((d.eval(x).unwrap() - at_zero).abs() < 1e-3, "X = {x}");
        }
    }

    #[test]
    fn single_point_matches_precomputed() {
        let s = MellinLineSettings::default();
        let d = StableDensity::new(1.6, s).unwrap();
        for x in [-3.0, -0.2, 0.7, 2.5] {
            assert_eq!(stable_density(x, 1.6, &s).unwrap(), d.eval(x).unwrap());
        }
    }

    #[test]
    fn short_contour_is_a_truncation_error() {
        let s = MellinLineSettings { y_max: 5.0, ..Default::default() };
        assert!(matches!(stable_density(0.5, 1.5, &s), Err(Error::ContourTruncation { .. })));
    }

    #[test]
    fn gaussian_grid_matches_heat_kernel() {
        let (sigma, tau) = (0.2, 1.0);
        let mu = -0.5 * sigma * sigma;
        let spec = GridSpec { n_points: 201, ..Default::default() };
        let grid = build_density_grid(2.0, mu, tau, &spec).unwrap();
        assert!(grid.warnings().is_empty());
        for (y, p) in grid.points() {
            let exact = (-y * y / (2.0 * sigma * sigma * tau)).exp() / (sigma * (2.0 * PI * tau).sqrt());
            assert!((p - exact).abs() < 1e-8, "y = {y}");
        }
        assert!((grid.mass() - 1.0).abs() < 1e-4);
    }

    #[test]
    fn heavy_tail_warns_and_extends() {
        let mu = crate::model::martingale_drift(0.2, 1.5).unwrap();
        let plain = GridSpec { n_points: 201, ..Default::default() };
        let grid = build_density_grid(1.5, mu, 1.0, &plain).unwrap();
        assert!(grid.warnings()[0].contains("left edge"));
        assert_eq!(grid.extensions(), 0);

        let extending = GridSpec { auto_extend: true, ..plain };
        let grid = build_density_grid(1.5, mu, 1.0, &extending).unwrap();
        assert!(grid.extensions() >= 1);
        assert!(grid.y_min() < -20.0 * grid.scale());
        assert!((grid.y(1) - grid.y(0) - grid.dy()).abs() < 1e-15);
    }

    #[test]
    fn discretized_price_near_series() {
        let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
        let p = discretized_price_default(&spec, 1.8).unwrap();
        let series = crate::series::price_series_default(&spec, 1.8).unwrap().price;
        assert!((p.price / series - 1.0).abs() < 0.01, "{} vs {series}", p.price);
    }

    #[test]
    fn grid_must_match_model() {
        let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0).unwrap();
        let model = StableModel::new(1.8, &spec).unwrap();
        let grid_spec = GridSpec { n_points: 11, ..Default::default() };
        let grid = build_density_grid(1.7, model.mu(), 1.0, &grid_spec).unwrap();
        assert!(matches!(discretized_price(&model, &spec, &grid), Err(Error::InvalidInput(_))));
    }
}
