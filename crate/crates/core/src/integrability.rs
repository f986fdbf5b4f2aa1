//! Uniform integrability of sampled boundary families.
//!
//! A family `G` of nonnegative functions on the circle is uniformly
//! integrable when `T(t) = sup_g ∫_{g ≥ t} g dθ/2π → 0`. For sampled
//! families `T` is computed exactly; what is only evidence is the step from
//! the sample to the continuum it stands for.
//!
//! Gauges are the constructive form of the de la Vallée Poussin criterion:
//! `ω(t) = Σ_n (t − t_n)⁺` with knots chosen so that `T(t_n) ≤ 2^{−n}`,
//! which forces `∫ ω(g) ≤ Σ 2^{−n} ≤ 1` for every member.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, HardyError, Result};
use crate::grid::CircleGrid;

/// Number of thresholds in a UI report grid (including `t = 0`).
pub const THRESHOLDS: usize = 101;
/// Default truncation of the gauge knot sequence.
pub const DEFAULT_LEVELS: usize = 20;
/// Knot search resolution as a power of two.
pub const KNOT_RESOLUTION_BITS: u32 = 20;

/// Finite family of nonnegative boundary functions sampled on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySampleFamily {
    grid: CircleGrid,
    members: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl BoundarySampleFamily {
    pub fn new(grid: CircleGrid) -> Self {
        Self {
            grid,
            members: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, samples: Vec<f64>) -> Result<()> {
        if samples.len() != self.grid.size() {
            return Err(invalid(format!(
                "member has {} samples, grid has {}",
                samples.len(),
                self.grid.size()
            )));
        }
        if let Some((index, &value)) = samples
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(HardyError::NonIntegrable { index, value });
        }
        self.members.push(samples);
        self.labels.push(label.into());
        Ok(())
    }

    pub fn with(mut self, label: impl Into<String>, samples: Vec<f64>) -> Result<Self> {
        self.push(label, samples)?;
        Ok(self)
    }

    pub fn grid(&self) -> &CircleGrid {
        &self.grid
    }

    pub fn members(&self) -> &[Vec<f64>] {
        &self.members
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_value(&self) -> f64 {
        self.members.iter().flatten().copied().fold(0.0, f64::max)
    }

    fn ensure_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(invalid("empty family"))
        } else {
            Ok(())
        }
    }
}

fn member_tail(samples: &[f64], t: f64) -> f64 {
    // Uniform weights: the dθ/2π mean is the arithmetic mean.
    samples.iter().filter(|&&s| s >= t).sum::<f64>() / samples.len() as f64
}

/// `T(t) = max_g mean(g · 1{g ≥ t})`.
pub fn tail_function(family: &BoundarySampleFamily, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(invalid(format!("threshold must be nonnegative, got {t}")));
    }
    family.ensure_nonempty()?;
    Ok(family
        .members
        .iter()
        .map(|m| member_tail(m, t))
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UiVerdict {
    UniformlyIntegrable,
    Not,
    Inconclusive,
}

/// Tail curve of a family and the verdict drawn from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UIReport {
    pub thresholds: Vec<f64>,
    pub tail_sup: Vec<f64>,
    pub verdict: UiVerdict,
    pub epsilon: f64,
    pub t_max: f64,
    /// Smallest threshold with `T(t) ≤ ε`, if any.
    pub first_below: Option<f64>,
    pub members: usize,
}

/// Tail curve on `THRESHOLDS` equispaced points of `[0, t_max]`, and a verdict:
/// uniformly integrable once `T ≤ ε`; not when `T` stays above `ε` and flat
/// to within `ε/10` over the upper half of the grid; inconclusive otherwise.
pub fn ui_verdict(family: &BoundarySampleFamily, epsilon: f64, t_max: f64) -> Result<UIReport> {
    if !(epsilon > 0.0) {
        return Err(invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(invalid(format!(
            "t_max must be positive and finite, got {t_max}"
        )));
    }
    family.ensure_nonempty()?;
    let thresholds: Vec<f64> = (0..THRESHOLDS)
        .map(|i| t_max * i as f64 / (THRESHOLDS - 1) as f64)
        .collect();
    let tail_sup = thresholds
        .iter()
        .map(|&t| tail_function(family, t))
        .collect::<Result<Vec<_>>>()?;
    let first_below = thresholds
        .iter()
        .zip(&tail_sup)
        .find(|(_, &v)| v <= epsilon)
        .map(|(&t, _)| t);
    let upper = &tail_sup[(THRESHOLDS - 1) / 2..];
    let hi = upper.iter().copied().fold(f64::MIN, f64::max);
    let lo = upper.iter().copied().fold(f64::MAX, f64::min);
    let verdict = if first_below.is_some() {
        UiVerdict::UniformlyIntegrable
    } else if lo > epsilon && hi - lo <= epsilon / 10.0 {
        UiVerdict::Not
    } else {
        UiVerdict::Inconclusive
    };
    Ok(UIReport {
        thresholds,
        tail_sup,
        verdict,
        epsilon,
        t_max,
        first_below,
        members: family.len(),
    })
}

/// Convex nondecreasing piecewise-linear gauge `ω(t) = Σ_n (t − t_n)⁺`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Gauge {
    knots: Vec<f64>,
}

impl Gauge {
    pub fn new(knots: Vec<f64>) -> Result<Self> {
        if knots.is_empty() {
            return Err(invalid("a gauge needs at least one knot"));
        }
        if !knots.iter().all(|&t| t > 0.0 && t.is_finite()) {
            return Err(invalid("gauge knots must be positive and finite"));
        }
        if !knots.windows(2).all(|w| w[0] < w[1]) {
            return Err(invalid("gauge knots must be strictly increasing"));
        }
        Ok(Self { knots })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.knots.iter().map(|&k| (t - k).max(0.0)).sum()
    }

    /// `ω(t)/t → L` for `L` knots: the finite stand-in for superlinear growth.
    pub fn asymptotic_slope(&self) -> usize {
        self.knots.len()
    }

    /// `mean(ω ∘ samples)`.
    pub fn integral(&self, samples: &[f64]) -> f64 {
        samples.iter().map(|&s| self.eval(s)).sum::<f64>() / samples.len() as f64
    }
}

impl TryFrom<Vec<f64>> for Gauge {
    type Error = HardyError;

    fn try_from(knots: Vec<f64>) -> Result<Self> {
        Self::new(knots)
    }
}

impl From<Gauge> for Vec<f64> {
    fn from(g: Gauge) -> Self {
        g.knots
    }
}

pub fn gauge_eval(gauge: &Gauge, t: f64) -> f64 {
    gauge.eval(t)
}

/// `mean(ω ∘ g)` for every member.
pub fn gauge_integrals(family: &BoundarySampleFamily, gauge: &Gauge) -> Vec<f64> {
    family.members.iter().map(|m| gauge.integral(m)).collect()
}

/// Builds a gauge with `levels` knots. See [`build_gauge_capped`].
pub fn build_gauge(family: &BoundarySampleFamily, levels: usize) -> Result<Gauge> {
    build_gauge_capped(family, levels, 1.0 + 2.0 * family.max_value())
}

/// Builds a gauge whose knots are searched on `[0, t_cap]`.
///
/// Knot `t_n` is the smallest point of a `t_cap·2^{−20}` lattice with
/// `T(t_n) ≤ 2^{−n}`, nudged up one lattice step when needed to keep the
/// sequence strictly increasing. Fails when the family is not uniformly
/// integrable at level `2^{−levels}` within `t_cap`.
pub fn build_gauge_capped(
    family: &BoundarySampleFamily,
    levels: usize,
    t_cap: f64,
) -> Result<Gauge> {
    if levels == 0 || levels > 52 {
        return Err(invalid(format!("levels must lie in 1..=52, got {levels}")));
    }
    family.ensure_nonempty()?;
    let finest = 0.5f64.powi(levels as i32);
    let report = ui_verdict(family, finest, t_cap)?;
    if report.verdict != UiVerdict::UniformlyIntegrable {
        return Err(HardyError::GaugeUnavailable(format!(
            "tail stays above 2^-{levels} on [0, {t_cap}]"
        )));
    }
    let lattice = 1u64 << KNOT_RESOLUTION_BITS;
    let step = t_cap / lattice as f64;
    let tail_at = |k: u64| tail_function(family, k as f64 * step);
    let mut knots = Vec::with_capacity(levels);
    let mut prev = 0u64;
    for n in 1..=levels {
        let target = 0.5f64.powi(n as i32);
        let (mut lo, mut hi) = (prev + 1, lattice.max(prev + 1));
        if tail_at(hi)? > target {
            return Err(HardyError::GaugeUnavailable(format!(
                "no knot for level {n} below {t_cap}"
            )));
        }
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if tail_at(mid)? <= target {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        knots.push(lo as f64 * step);
        prev = lo;
    }
    Gauge::new(knots)
}

/// Forward direction of the criterion, measured on a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeBound {
    pub t: f64,
    /// `sup_{s ≥ t} s/ω(s)`.
    pub epsilon: f64,
    /// `sup_g mean(ω ∘ g)`.
    pub m: f64,
    pub bound: f64,
    pub tail: f64,
    pub holds: bool,
}

/// `T(t) ≤ ε(t)·M` with `ε(t) = sup_{s≥t} s/ω(s) = t/ω(t)` (ω(s)/s is
/// nondecreasing because ω is convex with ω(0) = 0).
pub fn gauge_implies_ui(
    family: &BoundarySampleFamily,
    gauge: &Gauge,
    t: f64,
) -> Result<GaugeBound> {
    let w = gauge.eval(t);
    if !(w > 0.0) {
        return Err(HardyError::BoundUnavailable(t));
    }
    let epsilon = t / w;
    let m = gauge_integrals(family, gauge)
        .into_iter()
        .fold(0.0, f64::max);
    let bound = epsilon * m;
    let tail = tail_function(family, t)?;
    let holds = tail <= bound * (1.0 + 1e-12) + f64::MIN_POSITIVE;
    Ok(GaugeBound {
        t,
        epsilon,
        m,
        bound,
        tail,
        holds,
    })
}
