//! Smirnov and outer classification, inner-outer factorization, and the
//! composition harness over sampled Schur families.
//!
//! Smirnov membership is read off two equivalent tests: whether the
//! interior means `I(r) = ∫ log⁺|f(re^{iθ})| dθ/2π` converge to the boundary
//! mean of `log⁺|f*|`, and whether the radial family `{log⁺|f_r|}` is
//! uniformly integrable. Both are evaluated at finitely many radii, so
//! every verdict here is sampled evidence rather than proof.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, HardyError, Result};
use crate::functions::{
    boundary_log_modulus, compose, interior_log_modulus, synth_outer, AnalyticFunction, Clip,
    RadialSchedule, DEFAULT_BOUNDARY_DEPTH,
};
use crate::grid::{unit, CircleGrid, DiskPoint, DEFAULT_GRID};
use crate::integrability::{ui_verdict, BoundarySampleFamily, Gauge, UIReport, UiVerdict};
use crate::schur::{sample_family, SchurMap};

/// Smirnov gap tolerance.
pub const DEFAULT_TOL: f64 = 5e-3;
/// Decision tolerance for UI verdicts of radial and composition families.
pub const DEFAULT_UI_EPSILON: f64 = 0.5;
/// Largest threshold examined by UI verdicts.
pub const DEFAULT_T_MAX: f64 = 20.0;
/// Number of deterministic probe points used by [`factorize`].
pub const PROBES: usize = 50;
/// Number of spot-checked maps in the composition harness.
pub const SPOT_CHECKS: usize = 3;

/// Discretization shared by every classification routine.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyConfig {
    pub grid: CircleGrid,
    /// Radii for interior means. Means use a grid refined per radius;
    /// radial families use only the radii the base grid resolves.
    pub interior: RadialSchedule,
    /// Radii used to approach the circle for boundary values.
    pub boundary: RadialSchedule,
    pub tol: f64,
    pub ui_epsilon: f64,
    pub t_max: f64,
}

impl ClassifyConfig {
    pub fn with_grid(size: usize) -> Result<Self> {
        Ok(Self {
            grid: CircleGrid::new(size)?,
            interior: RadialSchedule::default(),
            boundary: RadialSchedule::dyadic(DEFAULT_BOUNDARY_DEPTH)?,
            tol: DEFAULT_TOL,
            ui_epsilon: DEFAULT_UI_EPSILON,
            t_max: DEFAULT_T_MAX,
        })
    }

    /// Interior radii resolved by the base grid.
    pub fn radii(&self) -> Result<Vec<f64>> {
        let radii = self.interior.resolved_on(&self.grid);
        if radii.len() < 2 {
            return Err(invalid(format!(
                "fewer than two interior radii are resolved by a {}-node grid",
                self.grid.size()
            )));
        }
        Ok(radii)
    }
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self::with_grid(DEFAULT_GRID).expect("default grid is valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmirnovClass {
    Smirnov,
    NotSmirnov,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmirnovVerdict {
    /// `(r, I(r))` at each scheduled radius.
    pub interior_integrals: Vec<(f64, f64)>,
    pub interior_limit: f64,
    /// `I` is nondecreasing in `r` (up to 1e−9).
    pub monotone: bool,
    /// Last two interior means agree within the tolerance.
    pub plateau: bool,
    pub boundary_integral: f64,
    pub gap: f64,
    pub classification: SmirnovClass,
    pub tolerance: f64,
    pub divergent_nodes: usize,
    pub unconverged_nodes: usize,
}

fn interior_means(f: &AnalyticFunction, cfg: &ClassifyConfig) -> Result<Vec<(f64, f64)>> {
    cfg.interior
        .radii()
        .iter()
        .map(|&r| {
            let grid = cfg.grid.refined_for(r)?;
            let samples = interior_log_modulus(f, &grid, r, Clip::LogPlus)?;
            Ok((r, grid.mean(&samples)?))
        })
        .collect()
}

/// Compares `lim I(r)` with the boundary mean of `log⁺|f*|`.
///
/// Smirnov when `|gap| ≤ tol`; not Smirnov when `gap > 3·tol` and the
/// interior means are monotone and have levelled off; inconclusive otherwise.
pub fn smirnov_test(f: &AnalyticFunction, cfg: &ClassifyConfig) -> Result<SmirnovVerdict> {
    let interior_integrals = interior_means(f, cfg)?;
    let boundary = boundary_log_modulus(f, &cfg.grid, &cfg.boundary, Clip::LogPlus)?;
    let boundary_integral = cfg.grid.mean(&boundary.values)?;
    let k = interior_integrals.len();
    let interior_limit = interior_integrals[k - 1].1;
    let monotone = interior_integrals
        .windows(2)
        .all(|w| w[1].1 >= w[0].1 - 1e-9);
    let plateau = (interior_limit - interior_integrals[k - 2].1).abs() <= cfg.tol;
    let gap = interior_limit - boundary_integral;
    let classification = if gap.abs() <= cfg.tol {
        SmirnovClass::Smirnov
    } else if gap > 3.0 * cfg.tol && monotone && plateau {
        SmirnovClass::NotSmirnov
    } else {
        SmirnovClass::Inconclusive
    };
    Ok(SmirnovVerdict {
        interior_integrals,
        interior_limit,
        monotone,
        plateau,
        boundary_integral,
        gap,
        classification,
        tolerance: cfg.tol,
        divergent_nodes: boundary.divergent.len(),
        unconverged_nodes: boundary.unconverged,
    })
}

/// `{clip(log|f(r e^{iθ})|) : r resolved}` as a sampled family.
pub fn radial_family(
    f: &AnalyticFunction,
    cfg: &ClassifyConfig,
    clip: Clip,
) -> Result<BoundarySampleFamily> {
    let mut family = BoundarySampleFamily::new(cfg.grid.clone());
    for r in cfg.radii()? {
        family.push(
            format!("r={r}"),
            interior_log_modulus(f, &cfg.grid, r, clip)?,
        )?;
    }
    Ok(family)
}

/// UI verdict for the radial family `{log⁺|f_r|}`.
pub fn ui_smirnov_test(f: &AnalyticFunction, cfg: &ClassifyConfig) -> Result<UIReport> {
    ui_verdict(
        &radial_family(f, cfg, Clip::LogPlus)?,
        cfg.ui_epsilon,
        cfg.t_max,
    )
}

/// Whether two Smirnov readings agree: `smirnov ⇔ UI`, `not ⇔ not`.
pub fn criteria_agree(smirnov: SmirnovClass, ui: UiVerdict) -> bool {
    matches!(
        (smirnov, ui),
        (SmirnovClass::Smirnov, UiVerdict::UniformlyIntegrable)
            | (SmirnovClass::NotSmirnov, UiVerdict::Not)
            | (SmirnovClass::Inconclusive, UiVerdict::Inconclusive)
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OuterClass {
    Outer,
    NotOuter,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OuterVerdict {
    pub smirnov_f: SmirnovVerdict,
    pub smirnov_recip: SmirnovVerdict,
    /// `|log|f(0)| − mean(log|f*|)|`.
    pub mean_value_gap: f64,
    pub classification: OuterClass,
}

/// Outer iff `f ∈ N⁺`, `1/f ∈ N⁺`, and the mean-value identity holds.
pub fn outer_test(f: &AnalyticFunction, cfg: &ClassifyConfig) -> Result<OuterVerdict> {
    if !f.is_zero_free() {
        return Err(invalid(
            "outer_test needs a structurally zero-free function",
        ));
    }
    let smirnov_f = smirnov_test(f, cfg)?;
    let smirnov_recip = smirnov_test(&f.reciprocal()?, cfg)?;
    let mean_value_gap = mean_value_gap(f, DiskPoint::ORIGIN, cfg)?;
    let classes = [smirnov_f.classification, smirnov_recip.classification];
    let classification =
        if classes.iter().all(|&c| c == SmirnovClass::Smirnov) && mean_value_gap <= cfg.tol {
            OuterClass::Outer
        } else if classes.contains(&SmirnovClass::NotSmirnov) || mean_value_gap > 3.0 * cfg.tol {
            OuterClass::NotOuter
        } else {
            OuterClass::Inconclusive
        };
    Ok(OuterVerdict {
        smirnov_f,
        smirnov_recip,
        mean_value_gap,
        classification,
    })
}

/// `|log|f(z)| − mean(log|f*|)|`; zero at `z = 0` for outer `f`.
fn mean_value_gap(f: &AnalyticFunction, z: DiskPoint, cfg: &ClassifyConfig) -> Result<f64> {
    let boundary = boundary_log_modulus(f, &cfg.grid, &cfg.boundary, Clip::Signed)?;
    Ok((f.log_modulus(z)? - cfg.grid.mean(&boundary.values)?).abs())
}

/// Inner-outer factorization of a Smirnov function.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub inner: AnalyticFunction,
    pub outer: AnalyticFunction,
    /// Unimodular constant of the outer part.
    pub constant: Complex64,
    pub probes: Vec<DiskPoint>,
    pub max_inner_modulus: f64,
    /// `max |(|inner*| − 1)|` over grid nodes.
    pub boundary_inner_deviation: f64,
    /// `max |inner·outer − f| / (1 + |f|)` over probes.
    pub reconstruction_error: f64,
}

/// Golden-angle spiral in `0.05 ≤ |z| ≤ 0.6`, skipping points where `f`
/// (numerically) vanishes.
pub fn probe_points(f: &AnalyticFunction, count: usize) -> Result<Vec<DiskPoint>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut out = Vec::with_capacity(count);
    let mut k = 0usize;
    while out.len() < count {
        if k > 100 * count {
            return Err(invalid("could not find probe points away from the zeros"));
        }
        let r = 0.05 + 0.55 * ((k % count) as f64 + 0.5) / count as f64;
        let p = DiskPoint::new(unit(golden * k as f64) * r)?;
        if f.eval(p)?.norm() >= 1e-12 {
            out.push(p);
        }
        k += 1;
    }
    Ok(out)
}

/// Splits `f ∈ N⁺` as inner × outer.
///
/// The outer part is synthesized from the boundary log-modulus of `f`; its
/// unimodular constant is fixed by making the inner part real and positive
/// at the probe where `|f|` is largest. The inner part is the quotient.
pub fn factorize(f: &AnalyticFunction, cfg: &ClassifyConfig) -> Result<Factorization> {
    let verdict = smirnov_test(f, cfg)?;
    if verdict.classification != SmirnovClass::Smirnov {
        return Err(HardyError::FactorizationUnavailable(format!(
            "function is not Smirnov (gap {})",
            verdict.gap
        )));
    }
    let boundary = boundary_log_modulus(f, &cfg.grid, &cfg.boundary, Clip::Signed)?;
    if !boundary.divergent.is_empty() {
        return Err(HardyError::FactorizationUnavailable(format!(
            "{} divergent boundary nodes",
            boundary.divergent.len()
        )));
    }
    let probes = probe_points(f, PROBES)?;
    let values = probes
        .iter()
        .map(|&p| f.eval(p))
        .collect::<Result<Vec<_>>>()?;
    let (best, _) = values
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |acc, (i, v)| {
            if v.norm() > acc.1 {
                (i, v.norm())
            } else {
                acc
            }
        });
    let unit_outer = synth_outer(&boundary.values, Complex64::new(1.0, 0.0), &cfg.grid)?;
    let ratio = values[best] / unit_outer.eval(probes[best])?;
    let constant = ratio / ratio.norm();
    let outer = synth_outer(&boundary.values, constant, &cfg.grid)?;
    let inner = AnalyticFunction::quotient(f.clone(), outer.clone())?;

    let mut max_inner_modulus = 0.0f64;
    let mut reconstruction_error = 0.0f64;
    for (&p, &fv) in probes.iter().zip(&values) {
        let i = inner.eval(p)?;
        let o = outer.eval(p)?;
        max_inner_modulus = max_inner_modulus.max(i.norm());
        reconstruction_error = reconstruction_error.max((i * o - fv).norm() / (1.0 + fv.norm()));
    }
    let inner_boundary = boundary_log_modulus(&inner, &cfg.grid, &cfg.boundary, Clip::Signed)?;
    let boundary_inner_deviation = inner_boundary
        .values
        .iter()
        .map(|&v| (v.exp() - 1.0).abs())
        .fold(0.0, f64::max);
    if max_inner_modulus > 1.0 + 1e-6 {
        return Err(HardyError::FactorizationUnavailable(format!(
            "inner part reaches modulus {max_inner_modulus} inside the disk"
        )));
    }
    if boundary_inner_deviation > 1e-3 {
        return Err(HardyError::FactorizationUnavailable(format!(
            "inner part is not unimodular on the circle (deviation {boundary_inner_deviation})"
        )));
    }
    Ok(Factorization {
        inner,
        outer,
        constant,
        probes,
        max_inner_modulus,
        boundary_inner_deviation,
        reconstruction_error,
    })
}

/// One instance of the subharmonic-majorant inequality used to transport
/// gauge bounds through composition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MajorantReport {
    pub r: f64,
    pub psi_at_zero: Complex64,
    /// `mean(ω(log⁺|(f∘ψ)(r e^{iθ})|))`.
    pub lhs: f64,
    /// Poisson extension of `ω(log⁺|f*|)` evaluated at `ψ(0)`.
    pub majorant: f64,
    pub slack: f64,
    pub holds: bool,
}

pub fn harmonic_majorant_check(
    f: &AnalyticFunction,
    gauge: &Gauge,
    psi: &SchurMap,
    r: f64,
    cfg: &ClassifyConfig,
) -> Result<MajorantReport> {
    if !(r > 0.0 && r < 1.0) {
        return Err(invalid(format!("radius must lie in (0,1), got {r}")));
    }
    let boundary = boundary_log_modulus(f, &cfg.grid, &cfg.boundary, Clip::LogPlus)?;
    let weighted: Vec<f64> = boundary.values.iter().map(|&v| gauge.eval(v)).collect();
    let center = DiskPoint::new(psi.value_at_zero())?;
    let majorant = cfg.grid.poisson_extension(&weighted, center)?;
    let composed = compose(f, psi);
    let inner: Vec<f64> = interior_log_modulus(&composed, &cfg.grid, r, Clip::LogPlus)?
        .into_iter()
        .map(|v| gauge.eval(v))
        .collect();
    let lhs = cfg.grid.mean(&inner)?;
    let slack = majorant - lhs;
    Ok(MajorantReport {
        r,
        psi_at_zero: psi.value_at_zero(),
        lhs,
        majorant,
        slack,
        holds: slack >= -cfg.tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HarnessMode {
    /// `log⁺|(f∘ψ)*|` family: tests `f ∈ N⁺`.
    Smirnov,
    /// `log⁺` and `log⁻` families: tests that `f` is outer.
    Outer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub label: String,
    pub smirnov: Option<SmirnovVerdict>,
    pub outer: Option<OuterVerdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub mode: HarnessMode,
    pub a: f64,
    pub labels: Vec<String>,
    pub log_plus: UIReport,
    pub log_minus: Option<UIReport>,
    /// `|log|f(ψ(0))| − mean(log|(f∘ψ)*|)|` per member (outer mode).
    pub mean_value_gaps: Option<Vec<f64>>,
    pub spot_checks: Vec<SpotCheck>,
    pub divergent_nodes: usize,
    pub evidence: String,
}

/// Scale maps `z ↦ r z` at the resolved interior radii. Their composition
/// family coincides node-for-node with the radial family of `f`.
pub fn scale_probes(cfg: &ClassifyConfig) -> Result<Vec<SchurMap>> {
    cfg.radii()?.into_iter().map(SchurMap::scale).collect()
}

/// Seeded `S_a` sample followed by the [`scale_probes`].
pub fn harness_family(
    a: f64,
    count: usize,
    seed: u64,
    max_degree: usize,
    cfg: &ClassifyConfig,
) -> Result<Vec<SchurMap>> {
    let mut family = sample_family(a, count, seed, max_degree)?;
    family.extend(scale_probes(cfg)?);
    Ok(family)
}

/// Boundary log-modulus of `f ∘ ψ` for each map, as signed samples.
pub fn composition_samples(
    f: &AnalyticFunction,
    family: &[SchurMap],
    cfg: &ClassifyConfig,
) -> Result<(Vec<Vec<f64>>, usize)> {
    let mut out = Vec::with_capacity(family.len());
    let mut divergent = 0;
    for psi in family {
        let s = boundary_log_modulus(&compose(f, psi), &cfg.grid, &cfg.boundary, Clip::Signed)?;
        divergent += s.divergent.len();
        out.push(s.values);
    }
    Ok((out, divergent))
}

/// Builds `{clip log|(f∘ψ)*| : ψ ∈ family}` and reports its UI verdicts,
/// plus Smirnov (or outer) tests of the first few compositions.
pub fn verify_composition_theorem(
    f: &AnalyticFunction,
    a: f64,
    family: &[SchurMap],
    mode: HarnessMode,
    cfg: &ClassifyConfig,
) -> Result<HarnessReport> {
    if family.is_empty() {
        return Err(invalid("empty Schur family"));
    }
    if mode == HarnessMode::Outer && !f.is_zero_free() {
        return Err(invalid(
            "outer mode needs a structurally zero-free function",
        ));
    }
    if let Some(psi) = family.iter().find(|p| p.value_at_zero().norm() > a) {
        return Err(invalid(format!("{} lies outside S_{a}", psi.describe())));
    }
    let labels: Vec<String> = family
        .iter()
        .enumerate()
        .map(|(i, p)| format!("psi#{i} {}", p.describe()))
        .collect();
    let (signed, divergent_nodes) = composition_samples(f, family, cfg)?;

    let clipped = |clip: Clip| -> Result<BoundarySampleFamily> {
        let mut fam = BoundarySampleFamily::new(cfg.grid.clone());
        for (label, s) in labels.iter().zip(&signed) {
            fam.push(label.clone(), s.iter().map(|&v| clip.apply(v)).collect())?;
        }
        Ok(fam)
    };
    let log_plus = ui_verdict(&clipped(Clip::LogPlus)?, cfg.ui_epsilon, cfg.t_max)?;
    let (log_minus, mean_value_gaps) = match mode {
        HarnessMode::Smirnov => (None, None),
        HarnessMode::Outer => {
            let report = ui_verdict(&clipped(Clip::LogMinus)?, cfg.ui_epsilon, cfg.t_max)?;
            let gaps = family
                .iter()
                .zip(&signed)
                .map(|(psi, s)| {
                    let at = f.log_modulus(DiskPoint::new(psi.value_at_zero())?)?;
                    Ok((at - cfg.grid.mean(s)?).abs())
                })
                .collect::<Result<Vec<_>>>()?;
            (Some(report), Some(gaps))
        }
    };

    let spot_checks = family
        .iter()
        .zip(&labels)
        .take(SPOT_CHECKS)
        .map(|(psi, label)| {
            let g = compose(f, psi);
            Ok(match mode {
                HarnessMode::Smirnov => SpotCheck {
                    label: label.clone(),
                    smirnov: Some(smirnov_test(&g, cfg)?),
                    outer: None,
                },
                HarnessMode::Outer => SpotCheck {
                    label: label.clone(),
                    smirnov: None,
                    outer: Some(outer_test(&g, cfg)?),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(HarnessReport {
        mode,
        a,
        labels,
        log_plus,
        log_minus,
        mean_value_gaps,
        spot_checks,
        divergent_nodes,
        evidence: format!(
            "sampled evidence over {} maps and {} nodes; not a proof",
            family.len(),
            cfg.grid.size()
        ),
    })
}
