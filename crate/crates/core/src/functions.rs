//! Evaluable holomorphic functions on the disk.
//!
//! Outer functions are synthesized from boundary log-modulus samples. In
//! the interior they are evaluated by midpoint quadrature of the Herglotz
//! integral. Near the circle that sum degenerates (the discrete measure is
//! atomic), so there they switch to the Herglotz transform of the
//! trigonometric interpolant of the samples, i.e. the truncated Taylor
//! series `c₀ + 2Σ c_k z^k`. The two agree to `|z|^{N/2}`, and the series has
//! the sampled values as its boundary real part.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, HardyError, Result};
use crate::grid::{herglotz_kernel, poisson_kernel, unit, CircleGrid, DiskPoint};
use crate::schur::{blaschke_factor, SchurMap};

/// `ln(1e300)`: log-moduli beyond this are reported as divergent.
pub const LOG_OVERFLOW: f64 = 690.775_527_898_213_7;
/// Default depth of the interior radial schedule.
pub const DEFAULT_RADII: usize = 12;
/// Default depth of the schedule used to approach the circle.
pub const DEFAULT_BOUNDARY_DEPTH: usize = 36;
/// Default Cauchy tolerance for radial convergence.
pub const RADIAL_TOL: f64 = 1e-6;
/// Fraction of divergent nodes tolerated by a boundary sweep.
pub const MAX_DIVERGENT_FRACTION: f64 = 0.01;
/// Quotients whose denominator falls below this modulus fail to evaluate.
pub const UNDERFLOW: f64 = 1e-300;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Closed-form functions used as test subjects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    /// `z`
    Identity,
    /// `1 − z`
    OneMinusZ,
    /// `e^z`
    ExpZ,
    /// `exp((1+z)/(1−z))`, the standard element of `N ∖ N⁺`.
    ExpHerglotz,
}

impl ClosedForm {
    fn eval(self, z: Complex64) -> Complex64 {
        match self {
            ClosedForm::Identity => z,
            ClosedForm::OneMinusZ => ONE - z,
            ClosedForm::ExpZ => z.exp(),
            ClosedForm::ExpHerglotz => ((ONE + z) / (ONE - z)).exp(),
        }
    }

    fn log_modulus(self, z: Complex64) -> f64 {
        match self {
            ClosedForm::Identity => z.norm().ln(),
            ClosedForm::OneMinusZ => (ONE - z).norm().ln(),
            ClosedForm::ExpZ => z.re,
            ClosedForm::ExpHerglotz => (1.0 - z.norm_sqr()) / (ONE - z).norm_sqr(),
        }
    }

    fn is_zero_free(self) -> bool {
        !matches!(self, ClosedForm::Identity)
    }
}

/// A point mass of a singular measure on the circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointMass {
    pub angle: f64,
    pub mass: f64,
}

/// Boundary data and precomputed evaluation tables of an outer function.
#[derive(Debug, Clone, PartialEq)]
pub struct OuterData {
    log_rho: Vec<f64>,
    c: Complex64,
    grid: CircleGrid,
    /// Discrete Fourier coefficients `d_k`, `k = 0..=N`, of the midpoint samples.
    fourier: Vec<Complex64>,
    taylor: Vec<Complex64>,
    series_radius: f64,
}

impl OuterData {
    pub fn log_rho(&self) -> &[f64] {
        &self.log_rho
    }

    pub fn constant(&self) -> Complex64 {
        self.c
    }

    pub fn grid(&self) -> &CircleGrid {
        &self.grid
    }

    /// Taylor coefficients of `log f − log c`, with negligible trailing
    /// terms dropped.
    pub fn taylor(&self) -> &[Complex64] {
        &self.taylor
    }

    /// Midpoint-rule Herglotz integral of `log ρ`.
    ///
    /// Expanding the kernel and summing the `N`-antiperiodic coefficients
    /// `d_{k+N} = −d_k` turns the node sum into
    /// `d₀ + 2/(1 + z^N) Σ_{k=1}^{N} d_k z^k`, evaluated by Horner.
    pub fn herglotz_quadrature(&self, z: Complex64) -> Complex64 {
        let n = self.fourier.len() - 1;
        let poly = self.fourier[1..]
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &d| (acc + d) * z);
        let zn = z.powu(n as u32);
        self.fourier[0] + poly * 2.0 / (ONE + zn)
    }

    /// Herglotz transform of the trigonometric interpolant of `log ρ`.
    pub fn herglotz_series(&self, z: Complex64) -> Complex64 {
        self.taylor
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    fn log_f(&self, z: Complex64) -> Complex64 {
        if z.norm() <= self.series_radius {
            self.herglotz_quadrature(z)
        } else {
            self.herglotz_series(z)
        }
    }
}

/// `d_k = (1/N) Σ_j s_j e^{−ikθ_j}` for `k = 0..=N` on midpoint nodes.
fn midpoint_fourier(samples: &[f64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf: Vec<Complex64> = samples.iter().map(|&s| Complex64::new(s, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let nf = n as f64;
    // Midpoint nodes shift every coefficient by e^{−iπk/N}.
    (0..=n)
        .map(|k| unit(-std::f64::consts::PI * k as f64 / nf) * buf[k % n] / nf)
        .collect()
}

/// Taylor coefficients of the Herglotz transform of the interpolant:
/// `d₀ + 2Σ_{0<k<N/2} d_k z^k + d_{N/2} z^{N/2}`.
fn herglotz_taylor(fourier: &[Complex64]) -> Vec<Complex64> {
    let n = fourier.len() - 1;
    let mut taylor = Vec::with_capacity(n / 2 + 1);
    taylor.push(Complex64::new(fourier[0].re, 0.0));
    for d in &fourier[1..n.div_ceil(2)] {
        taylor.push(d * 2.0);
    }
    if n.is_multiple_of(2) {
        taylor.push(fourier[n / 2]);
    }
    // On the closed disk the dropped tail is bounded by the sum of its moduli.
    let scale = taylor.iter().map(|a| a.norm()).fold(1.0, f64::max);
    let mut tail = 0.0;
    while taylor.len() > 1 {
        let next = tail + taylor[taylor.len() - 1].norm();
        if next > 1e-14 * scale {
            break;
        }
        tail = next;
        taylor.pop();
    }
    taylor
}

/// Holomorphic function on the disk.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticFunction {
    Outer(Arc<OuterData>),
    BlaschkeProduct(Vec<Complex64>),
    SingularInner(Vec<PointMass>),
    ClosedForm { form: ClosedForm, reciprocal: bool },
    Quotient(Box<AnalyticFunction>, Box<AnalyticFunction>),
    Composition(Box<AnalyticFunction>, SchurMap),
    Product(Vec<AnalyticFunction>),
    Constant(Complex64),
}

/// Which log-modulus to report on the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clip {
    /// `max(log|f|, 0)`
    LogPlus,
    /// `max(−log|f|, 0)`
    LogMinus,
    /// `log|f|`
    Signed,
}

impl Clip {
    pub fn apply(self, v: f64) -> f64 {
        match self {
            Clip::LogPlus => v.max(0.0),
            Clip::LogMinus => (-v).max(0.0),
            Clip::Signed => v,
        }
    }
}

impl AnalyticFunction {
    pub fn constant(c: Complex64) -> Self {
        AnalyticFunction::Constant(c)
    }

    pub fn closed(form: ClosedForm) -> Self {
        AnalyticFunction::ClosedForm {
            form,
            reciprocal: false,
        }
    }

    pub fn closed_reciprocal(form: ClosedForm) -> Result<Self> {
        if !form.is_zero_free() {
            return Err(invalid(format!("{form:?} has a zero in the disk")));
        }
        Ok(AnalyticFunction::ClosedForm {
            form,
            reciprocal: true,
        })
    }

    pub fn blaschke(zeros: Vec<Complex64>) -> Result<Self> {
        for a in &zeros {
            if !(a.re.is_finite() && a.im.is_finite()) || a.norm() >= 1.0 {
                return Err(invalid(format!("Blaschke zero {a} is not inside the disk")));
            }
        }
        Ok(AnalyticFunction::BlaschkeProduct(zeros))
    }

    pub fn singular_inner(masses: Vec<PointMass>) -> Result<Self> {
        for m in &masses {
            if !(m.mass >= 0.0 && m.mass.is_finite() && m.angle.is_finite()) {
                return Err(invalid(format!(
                    "point mass {m:?} must be finite and nonnegative"
                )));
            }
        }
        Ok(AnalyticFunction::SingularInner(masses))
    }

    /// `num / den`; `den` must be zero-free by construction.
    pub fn quotient(num: AnalyticFunction, den: AnalyticFunction) -> Result<Self> {
        if !den.is_zero_free() {
            return Err(invalid(
                "quotient denominator must be structurally zero-free",
            ));
        }
        Ok(AnalyticFunction::Quotient(Box::new(num), Box::new(den)))
    }

    pub fn reciprocal(&self) -> Result<Self> {
        Self::quotient(Self::constant(ONE), self.clone())
    }

    pub fn product(factors: Vec<AnalyticFunction>) -> Self {
        AnalyticFunction::Product(factors)
    }

    /// True when the variant cannot vanish anywhere in the disk.
    pub fn is_zero_free(&self) -> bool {
        match self {
            AnalyticFunction::Outer(_) | AnalyticFunction::SingularInner(_) => true,
            AnalyticFunction::Constant(c) => *c != Complex64::new(0.0, 0.0),
            AnalyticFunction::ClosedForm { form, .. } => form.is_zero_free(),
            AnalyticFunction::BlaschkeProduct(z) => z.is_empty(),
            AnalyticFunction::Quotient(num, _) => num.is_zero_free(),
            AnalyticFunction::Composition(f, _) => f.is_zero_free(),
            AnalyticFunction::Product(fs) => fs.iter().all(Self::is_zero_free),
        }
    }

    pub fn outer_data(&self) -> Option<&OuterData> {
        match self {
            AnalyticFunction::Outer(d) => Some(d),
            _ => None,
        }
    }

    /// Value at `z`. May be infinite where the function legitimately blows
    /// up numerically (e.g. `exp((1+z)/(1−z))` near `z = 1`).
    pub fn eval(&self, z: DiskPoint) -> Result<Complex64> {
        self.eval_raw(z.value())
    }

    fn eval_raw(&self, z: Complex64) -> Result<Complex64> {
        Ok(match self {
            AnalyticFunction::Outer(d) => d.c * d.log_f(z).exp(),
            AnalyticFunction::BlaschkeProduct(zeros) => zeros
                .iter()
                .fold(ONE, |acc, &a| acc * blaschke_factor(a, z)),
            AnalyticFunction::SingularInner(masses) => {
                let p = DiskPoint::new(z)?;
                let h: Complex64 = masses
                    .iter()
                    .map(|m| herglotz_kernel(m.angle, p) * m.mass)
                    .sum();
                (-h).exp()
            }
            AnalyticFunction::ClosedForm { form, reciprocal } => {
                let v = form.eval(z);
                if *reciprocal {
                    ONE / v
                } else {
                    v
                }
            }
            AnalyticFunction::Quotient(num, den) => {
                let d = den.eval_raw(z)?;
                if d.norm() < UNDERFLOW {
                    return Err(HardyError::Underflow { re: z.re, im: z.im });
                }
                num.eval_raw(z)? / d
            }
            AnalyticFunction::Composition(f, psi) => f.eval_raw(inside(psi.apply(z))?)?,
            AnalyticFunction::Product(fs) => {
                let mut acc = ONE;
                for f in fs {
                    acc *= f.eval_raw(z)?;
                }
                acc
            }
            AnalyticFunction::Constant(c) => *c,
        })
    }

    /// `log|f(z)|`, computed without forming `f(z)` so that it stays finite
    /// where `|f|` over- or underflows.
    pub fn log_modulus(&self, z: DiskPoint) -> Result<f64> {
        self.log_modulus_raw(z.value())
    }

    fn log_modulus_raw(&self, z: Complex64) -> Result<f64> {
        Ok(match self {
            AnalyticFunction::Outer(d) => d.log_f(z).re + d.c.norm().ln(),
            AnalyticFunction::BlaschkeProduct(zeros) => zeros
                .iter()
                .map(|&a| blaschke_factor(a, z).norm().ln())
                .sum(),
            AnalyticFunction::SingularInner(masses) => {
                let p = DiskPoint::new(z)?;
                -masses
                    .iter()
                    .map(|m| m.mass * poisson_kernel(m.angle, p))
                    .sum::<f64>()
            }
            AnalyticFunction::ClosedForm { form, reciprocal } => {
                let v = form.log_modulus(z);
                if *reciprocal {
                    -v
                } else {
                    v
                }
            }
            AnalyticFunction::Quotient(num, den) => {
                num.log_modulus_raw(z)? - den.log_modulus_raw(z)?
            }
            AnalyticFunction::Composition(f, psi) => f.log_modulus_raw(inside(psi.apply(z))?)?,
            AnalyticFunction::Product(fs) => {
                let mut acc = 0.0;
                for f in fs {
                    acc += f.log_modulus_raw(z)?;
                }
                acc
            }
            AnalyticFunction::Constant(c) => c.norm().ln(),
        })
    }

    /// Boundary log-modulus when the function is holomorphic across the
    /// circle at `e^{iθ}`: compositions with maps sending the closed disk
    /// inside, and constants, possibly combined by products and quotients.
    fn exact_boundary_log(&self, theta: f64) -> Option<Result<f64>> {
        match self {
            AnalyticFunction::Constant(c) => Some(Ok(c.norm().ln())),
            AnalyticFunction::Composition(f, psi) if psi.maps_closure_inside() => {
                Some(inside(psi.apply(unit(theta))).and_then(|w| f.log_modulus_raw(w)))
            }
            AnalyticFunction::Quotient(num, den) => {
                let n = num.exact_boundary_log(theta)?;
                let d = den.exact_boundary_log(theta)?;
                Some(n.and_then(|n| d.map(|d| n - d)))
            }
            AnalyticFunction::Product(fs) => {
                let mut acc = 0.0;
                for f in fs {
                    match f.exact_boundary_log(theta)? {
                        Ok(v) => acc += v,
                        Err(e) => return Some(Err(e)),
                    }
                }
                Some(Ok(acc))
            }
            _ => None,
        }
    }

    fn exact_boundary_value(&self, theta: f64) -> Option<Result<Complex64>> {
        match self {
            AnalyticFunction::Constant(c) => Some(Ok(*c)),
            AnalyticFunction::Composition(f, psi) if psi.maps_closure_inside() => {
                Some(inside(psi.apply(unit(theta))).and_then(|w| f.eval_raw(w)))
            }
            _ => None,
        }
    }
}

fn inside(w: Complex64) -> Result<Complex64> {
    DiskPoint::new(w).map(DiskPoint::value)
}

/// Builds the outer function with boundary modulus `exp(log_rho)` on `grid`
/// and unimodular constant `c`.
pub fn synth_outer(log_rho: &[f64], c: Complex64, grid: &CircleGrid) -> Result<AnalyticFunction> {
    if log_rho.len() != grid.size() {
        return Err(invalid(format!(
            "expected {} boundary samples, got {}",
            grid.size(),
            log_rho.len()
        )));
    }
    if let Some((index, &value)) = log_rho.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(HardyError::NonIntegrable { index, value });
    }
    if !((c.norm() - 1.0).abs() <= 1e-12) {
        return Err(invalid(format!(
            "outer constant must be unimodular, |c| = {}",
            c.norm()
        )));
    }
    let n = grid.size();
    // Below this radius the aliasing terms of the quadrature are under 1e-17.
    let series_radius = (-39.0 / (n as f64 / 2.0)).exp();
    let fourier = midpoint_fourier(log_rho);
    Ok(AnalyticFunction::Outer(Arc::new(OuterData {
        log_rho: log_rho.to_vec(),
        c,
        grid: grid.clone(),
        taylor: herglotz_taylor(&fourier),
        fourier,
        series_radius,
    })))
}

/// Evaluation point.
pub fn eval(f: &AnalyticFunction, z: DiskPoint) -> Result<Complex64> {
    f.eval(z)
}

/// `f ∘ ψ`.
pub fn compose(f: &AnalyticFunction, psi: &SchurMap) -> AnalyticFunction {
    AnalyticFunction::Composition(Box::new(f.clone()), psi.clone())
}

/// Increasing radii in `(0, 1)` used to approach the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RadialSchedule {
    radii: Vec<f64>,
}

impl RadialSchedule {
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        if radii.len() < 2 {
            return Err(invalid("a radial schedule needs at least two radii"));
        }
        if !radii.iter().all(|&r| r > 0.0 && r < 1.0) {
            return Err(invalid("radii must lie in (0,1)"));
        }
        if !radii.windows(2).all(|w| w[0] < w[1]) {
            return Err(invalid("radii must be strictly increasing"));
        }
        Ok(Self { radii })
    }

    /// `r_k = 1 − 2^{−k}` for `k = 1..=depth`.
    pub fn dyadic(depth: usize) -> Result<Self> {
        if depth > 50 {
            return Err(invalid("dyadic depth above 50 rounds radii to 1"));
        }
        Self::new((1..=depth).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect())
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn last(&self) -> f64 {
        self.radii[self.radii.len() - 1]
    }

    fn last_two(&self) -> (f64, f64) {
        let n = self.radii.len();
        (self.radii[n - 2], self.radii[n - 1])
    }

    /// Radii whose circle is resolved by `grid`: `r^N ≤ e^{−8}`.
    ///
    /// Beyond that the midpoint sum of a kernel peaking at width `1 − r`
    /// aliases, and interior means stop being trustworthy.
    pub fn resolved_on(&self, grid: &CircleGrid) -> Vec<f64> {
        let n = grid.size() as f64;
        self.radii
            .iter()
            .copied()
            .filter(|&r| -n * r.ln() >= 8.0)
            .collect()
    }
}

impl Default for RadialSchedule {
    fn default() -> Self {
        Self::dyadic(DEFAULT_RADII).expect("default depth is valid")
    }
}

impl TryFrom<Vec<f64>> for RadialSchedule {
    type Error = HardyError;

    fn try_from(radii: Vec<f64>) -> Result<Self> {
        Self::new(radii)
    }
}

impl From<RadialSchedule> for Vec<f64> {
    fn from(s: RadialSchedule) -> Self {
        s.radii
    }
}

/// Estimate of a radial boundary value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialLimit {
    pub value: Complex64,
    pub converged: bool,
    pub divergent: bool,
}

/// Last-iterate estimate of `lim_{r→1⁻} f(r e^{iθ})` with a Cauchy flag.
pub fn radial_limit(f: &AnalyticFunction, theta: f64, schedule: &RadialSchedule) -> RadialLimit {
    if let Some(v) = f.exact_boundary_value(theta) {
        return match v {
            Ok(value) if value.norm() <= 1e300 => RadialLimit {
                value,
                converged: true,
                divergent: false,
            },
            Ok(value) => RadialLimit {
                value,
                converged: false,
                divergent: true,
            },
            Err(_) => RadialLimit {
                value: Complex64::new(f64::NAN, f64::NAN),
                converged: false,
                divergent: true,
            },
        };
    }
    let (r_prev, r_last) = schedule.last_two();
    let at = |r: f64| DiskPoint::polar(r, theta).and_then(|z| f.eval(z));
    match (at(r_prev), at(r_last)) {
        (Ok(prev), Ok(last))
            if last.norm() <= 1e300 && last.re.is_finite() && last.im.is_finite() =>
        {
            let converged = (last - prev).norm() <= RADIAL_TOL * (1.0 + last.norm());
            RadialLimit {
                value: last,
                converged,
                divergent: false,
            }
        }
        (_, Ok(last)) => RadialLimit {
            value: last,
            converged: false,
            divergent: true,
        },
        (_, Err(_)) => RadialLimit {
            value: Complex64::new(f64::NAN, f64::NAN),
            converged: false,
            divergent: true,
        },
    }
}

/// Boundary log-modulus samples on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySamples {
    pub values: Vec<f64>,
    /// Nodes where `|f|` exceeded `1e300` or could not be evaluated.
    pub divergent: Vec<usize>,
    /// Nodes whose last two radial iterates differ by more than the tolerance.
    pub unconverged: usize,
}

/// Signed radial log-modulus at one node.
fn node_log(f: &AnalyticFunction, theta: f64, schedule: &RadialSchedule) -> (f64, bool, bool) {
    if let Some(v) = f.exact_boundary_log(theta) {
        return match v {
            Ok(v) if v.is_finite() => (v, true, false),
            Ok(v) => (v, false, true),
            Err(_) => (f64::NAN, false, true),
        };
    }
    let (r_prev, r_last) = schedule.last_two();
    let at = |r: f64| DiskPoint::polar(r, theta).and_then(|z| f.log_modulus(z));
    match (at(r_prev), at(r_last)) {
        (Ok(prev), Ok(last)) if last.is_finite() && last <= LOG_OVERFLOW => {
            let converged = (last - prev).abs() <= RADIAL_TOL * (1.0 + last.abs());
            (last, converged, false)
        }
        (_, Ok(last)) => (last, false, true),
        (_, Err(_)) => (f64::NAN, false, true),
    }
}

/// `log|f*(e^{iθ_j})|` at every node, clipped as requested.
///
/// Outer functions synthesized on the same grid report their stored
/// samples. Divergent nodes are listed; their entries are clamped to
/// `±LOG_OVERFLOW` (or 0 when no value exists) so the vector stays finite.
pub fn boundary_log_modulus(
    f: &AnalyticFunction,
    grid: &CircleGrid,
    schedule: &RadialSchedule,
    clip: Clip,
) -> Result<BoundarySamples> {
    if let Some(d) = f.outer_data() {
        if d.grid == *grid {
            return Ok(BoundarySamples {
                values: d.log_rho.iter().map(|&v| clip.apply(v)).collect(),
                divergent: Vec::new(),
                unconverged: 0,
            });
        }
    }
    let raw: Vec<(f64, bool, bool)> = grid
        .nodes()
        .par_iter()
        .map(|&t| node_log(f, t, schedule))
        .collect();
    let mut values = Vec::with_capacity(raw.len());
    let mut divergent = Vec::new();
    let mut unconverged = 0;
    for (j, (v, converged, div)) in raw.into_iter().enumerate() {
        if div {
            divergent.push(j);
        }
        if !converged {
            unconverged += 1;
        }
        let v = if v.is_nan() {
            0.0
        } else if div {
            v.clamp(-LOG_OVERFLOW, LOG_OVERFLOW)
        } else {
            v
        };
        values.push(clip.apply(v));
    }
    if divergent.len() as f64 > MAX_DIVERGENT_FRACTION * grid.size() as f64 {
        return Err(HardyError::BoundaryEstimationFailed {
            divergent: divergent.len(),
            total: grid.size(),
        });
    }
    Ok(BoundarySamples {
        values,
        divergent,
        unconverged,
    })
}

/// `log|f(r e^{iθ_j})|` at every node, clipped.
pub fn interior_log_modulus(
    f: &AnalyticFunction,
    grid: &CircleGrid,
    r: f64,
    clip: Clip,
) -> Result<Vec<f64>> {
    grid.nodes()
        .par_iter()
        .map(|&t| Ok(clip.apply(f.log_modulus(DiskPoint::polar(r, t)?)?)))
        .collect()
}

/// Samples `θ ↦ g(θ)` on the grid; convenience for building boundary data.
pub fn sample_boundary(grid: &CircleGrid, g: impl Fn(f64) -> f64) -> Vec<f64> {
    grid.nodes().iter().map(|&t| g(t)).collect()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;
    use crate::grid::make_grid;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(c(re, im)).unwrap()
    }

    #[test]
    fn eval_examples() {
        let z = p(0.3, -0.4);
        assert_eq!(
            AnalyticFunction::constant(c(2.0, 0.0)).eval(z).unwrap(),
            c(2.0, 0.0)
        );
        assert_eq!(
            AnalyticFunction::blaschke(vec![c(0.0, 0.0)])
                .unwrap()
                .eval(z)
                .unwrap(),
            z.value()
        );
        let s = AnalyticFunction::singular_inner(vec![PointMass {
            angle: 0.0,
            mass: 1.0,
        }])
        .unwrap();
        assert!((s.eval(DiskPoint::ORIGIN).unwrap() - c((-1.0f64).exp(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn constant_log_rho_gives_constant() {
        let g = make_grid(256).unwrap();
        let f = synth_outer(&vec![0.0; 256], unit(0.4), &g).unwrap();
        for z in [p(0.0, 0.0), p(0.5, 0.2), p(-0.1, 0.97)] {
            assert!((f.eval(z).unwrap() - unit(0.4)).norm() < 1e-14);
        }
    }

    #[test]
    fn cos_boundary_gives_exp() {
        let g = make_grid(4096).unwrap();
        let f = synth_outer(&sample_boundary(&g, f64::cos), ONE, &g).unwrap();
        let v = f.eval(DiskPoint::real(0.5).unwrap()).unwrap();
        assert!((v - c(0.5f64.exp(), 0.0)).norm() < 1e-8);
        // The series route near the circle is the same function.
        let w = p(0.6, 0.795);
        assert!((f.eval(w).unwrap() - w.value().exp()).norm() < 1e-10);
    }

    #[test]
    fn log_abs_one_minus_gives_one_minus_z() {
        let g = make_grid(4096).unwrap();
        let data = sample_boundary(&g, |t| (ONE - unit(t)).norm().ln());
        let f = synth_outer(&data, ONE, &g).unwrap();
        let v = f.eval(DiskPoint::real(0.5).unwrap()).unwrap();
        assert!((v.norm() - 0.5).abs() < 1e-3);
    }

    #[test]
    fn synth_rejects_bad_input() {
        let g = make_grid(8).unwrap();
        let mut data = vec![0.0; 8];
        assert!(synth_outer(&data, c(2.0, 0.0), &g).is_err());
        assert!(synth_outer(&data[..4], ONE, &g).is_err());
        data[3] = f64::INFINITY;
        assert!(matches!(
            synth_outer(&data, ONE, &g),
            Err(HardyError::NonIntegrable { index: 3, .. })
        ));
    }

    #[test]
    fn quadrature_matches_node_sum() {
        let g = make_grid(256).unwrap();
        let data = sample_boundary(&g, |t| (1.5 + t.cos()).ln() + 0.1 * (7.0 * t).sin());
        let f = synth_outer(&data, ONE, &g).unwrap();
        let d = f.outer_data().unwrap();
        for z in [c(0.0, 0.0), c(0.3, 0.2), c(-0.7, 0.6), c(0.0, -0.999)] {
            let p = DiskPoint::new(z).unwrap();
            let direct: Complex64 = g
                .nodes()
                .iter()
                .zip(&data)
                .map(|(&t, &s)| herglotz_kernel(t, p) * s)
                .sum::<Complex64>()
                / 256.0;
            assert!((d.herglotz_quadrature(z) - direct).norm() < 1e-12 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn smooth_data_trims_series() {
        let g = make_grid(4096).unwrap();
        let f = synth_outer(&sample_boundary(&g, f64::cos), ONE, &g).unwrap();
        assert!(f.outer_data().unwrap().taylor().len() < 8);
    }

    #[test]
    fn quadrature_and_series_agree_inside() {
        let g = make_grid(512).unwrap();
        let data = sample_boundary(&g, |t| (2.0 + (3.0 * t).sin()).ln() - 0.3 * (5.0 * t).cos());
        let f = synth_outer(&data, ONE, &g).unwrap();
        let d = f.outer_data().unwrap();
        for z in [c(0.1, 0.2), c(-0.5, 0.3), c(0.0, -0.85)] {
            assert!((d.herglotz_quadrature(z) - d.herglotz_series(z)).norm() < 1e-12);
        }
        // Series boundary real part interpolates the samples.
        for (j, e) in g.boundary_points().enumerate().step_by(37) {
            assert!((d.herglotz_series(e).re - data[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn odd_grid_series_interpolates() {
        let g = make_grid(33).unwrap();
        let data = sample_boundary(&g, |t| t.sin() + 0.2 * (4.0 * t).cos());
        let f = synth_outer(&data, ONE, &g).unwrap();
        let d = f.outer_data().unwrap();
        for (j, e) in g.boundary_points().enumerate() {
            assert!((d.herglotz_series(e).re - data[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn radial_limit_examples() {
        let sched = RadialSchedule::dyadic(DEFAULT_BOUNDARY_DEPTH).unwrap();
        let one_minus = AnalyticFunction::closed(ClosedForm::OneMinusZ);
        let l = radial_limit(&one_minus, FRAC_PI_2, &sched);
        assert!((l.value - c(1.0, -1.0)).norm() < 1e-9);
        assert!(l.converged && !l.divergent);

        let eh = AnalyticFunction::closed(ClosedForm::ExpHerglotz);
        let l = radial_limit(&eh, PI, &sched);
        assert!((l.value.norm() - 1.0).abs() < 1e-6);

        let b = AnalyticFunction::blaschke(vec![c(0.5, 0.0)]).unwrap();
        let l = radial_limit(&b, 0.0, &sched);
        assert!((l.value.norm() - 1.0).abs() < 1e-6);
        let closed = (c(0.5, 0.0) - ONE) / (ONE - c(0.5, 0.0));
        assert!((l.value + closed).norm() < 1e-6 || (l.value - closed).norm() < 1e-6);
    }

    #[test]
    fn radial_limit_divergence_is_data() {
        let eh = AnalyticFunction::closed(ClosedForm::ExpHerglotz);
        let l = radial_limit(&eh, 0.0, &RadialSchedule::default());
        assert!(l.divergent);
        assert!(!l.converged);
    }

    #[test]
    fn compose_examples() {
        let z = p(0.5, 0.0);
        let f = AnalyticFunction::closed(ClosedForm::OneMinusZ);
        let sq = SchurMap::blaschke(vec![c(0.0, 0.0), c(0.0, 0.0)], ONE).unwrap();
        assert!((compose(&f, &sq).eval(z).unwrap() - c(0.75, 0.0)).norm() < 1e-16);
        let e = AnalyticFunction::closed(ClosedForm::ExpZ);
        let half = SchurMap::scale(0.5).unwrap();
        assert!((compose(&e, &half).eval(z).unwrap() - c(0.25f64.exp(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn boundary_sweep_examples() {
        let g = make_grid(1024).unwrap();
        let sched = RadialSchedule::dyadic(DEFAULT_BOUNDARY_DEPTH).unwrap();
        let one = AnalyticFunction::constant(ONE);
        let s = boundary_log_modulus(&one, &g, &sched, Clip::Signed).unwrap();
        assert!(s.values.iter().all(|&v| v == 0.0));

        let b = AnalyticFunction::blaschke(vec![c(0.5, 0.0)]).unwrap();
        let s = boundary_log_modulus(&b, &g, &sched, Clip::LogPlus).unwrap();
        assert!(s.values.iter().all(|&v| v.abs() < 1e-6));

        let eh = AnalyticFunction::closed(ClosedForm::ExpHerglotz);
        let s = boundary_log_modulus(&eh, &g, &sched, Clip::LogPlus).unwrap();
        assert!(g.mean(&s.values).unwrap() < 1e-3);
    }

    #[test]
    fn quotient_requires_zero_free_denominator() {
        let z = AnalyticFunction::closed(ClosedForm::Identity);
        assert!(AnalyticFunction::quotient(AnalyticFunction::constant(ONE), z).is_err());
        assert!(AnalyticFunction::closed_reciprocal(ClosedForm::Identity).is_err());
        let s = AnalyticFunction::singular_inner(vec![PointMass {
            angle: 0.0,
            mass: 1.0,
        }])
        .unwrap();
        let r = s.reciprocal().unwrap();
        let eh = AnalyticFunction::closed(ClosedForm::ExpHerglotz);
        let w = p(0.2, 0.3);
        assert!((r.eval(w).unwrap() - eh.eval(w).unwrap()).norm() < 1e-13);
        assert!((r.log_modulus(w).unwrap() - eh.log_modulus(w).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn quotient_underflow() {
        let s = AnalyticFunction::singular_inner(vec![PointMass {
            angle: 0.0,
            mass: 1.0,
        }])
        .unwrap();
        let r = s.reciprocal().unwrap();
        let near = DiskPoint::real(0.9999).unwrap();
        assert!(matches!(r.eval(near), Err(HardyError::Underflow { .. })));
        assert!(r.log_modulus(near).unwrap() > 690.0);
    }

    #[test]
    fn log_modulus_matches_eval() {
        let f = AnalyticFunction::product(vec![
            AnalyticFunction::blaschke(vec![c(0.3, 0.4)]).unwrap(),
            AnalyticFunction::closed(ClosedForm::ExpZ),
            AnalyticFunction::closed_reciprocal(ClosedForm::OneMinusZ).unwrap(),
        ]);
        for z in [p(0.1, 0.1), p(-0.7, 0.2), p(0.5, -0.5)] {
            let direct = f.eval(z).unwrap().norm().ln();
            assert!((f.log_modulus(z).unwrap() - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn schedules() {
        let s = RadialSchedule::default();
        assert_eq!(s.radii().len(), 12);
        assert_eq!(s.radii()[0], 0.5);
        let g = make_grid(4096).unwrap();
        let resolved = s.resolved_on(&g);
        assert_eq!(resolved.len(), 9);
        assert!(RadialSchedule::new(vec![0.5, 0.4]).is_err());
        assert!(RadialSchedule::new(vec![0.5, 1.0]).is_err());
    }
}
