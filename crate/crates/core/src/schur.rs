//! Holomorphic self-maps of the disk and seeded samplers for the family
//! `S_a = {ψ : |ψ(0)| ≤ a}`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::grid::unit;

/// Zeros of sampled Blaschke factors are drawn uniformly from this disk.
pub const SAMPLER_ZERO_RADIUS: f64 = 0.8;
/// Range of the shrink factor of sampled scale maps.
pub const SAMPLER_SCALE_RANGE: (f64, f64) = (0.05, 0.95);

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The concrete shape of a [`SchurMap`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SchurKind {
    /// `z ↦ r z`.
    Scale { r: f64 },
    /// `z ↦ λ (a − z)/(1 − ā z)`.
    Automorphism { a: Complex64, lambda: Complex64 },
    /// `z ↦ λ ∏ b_{a_k}(z)`.
    FiniteBlaschke {
        zeros: Vec<Complex64>,
        rotation: Complex64,
    },
    /// `z ↦ s·ψ(z)`.
    PostScaled { inner: Box<SchurMap>, s: f64 },
    /// `z ↦ outer(inner(z))`.
    Composition {
        outer: Box<SchurMap>,
        inner: Box<SchurMap>,
    },
}

/// A non-constant holomorphic map `D → D` with its value at the origin cached.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SchurKind", into = "SchurKind")]
pub struct SchurMap {
    kind: SchurKind,
    value_at_zero: Complex64,
}

fn unimodular(lambda: Complex64, what: &str) -> Result<()> {
    if (lambda.norm() - 1.0).abs() > 1e-12 {
        return Err(invalid(format!(
            "{what} must be unimodular, |λ| = {}",
            lambda.norm()
        )));
    }
    Ok(())
}

fn in_disk(a: Complex64, what: &str) -> Result<()> {
    if !(a.re.is_finite() && a.im.is_finite()) || a.norm_sqr() >= 1.0 {
        return Err(invalid(format!(
            "{what} must lie in the open disk, got {a}"
        )));
    }
    Ok(())
}

/// Single Blaschke factor with zero `a`, normalised to be positive at the origin.
pub(crate) fn blaschke_factor(a: Complex64, z: Complex64) -> Complex64 {
    if a == Complex64::new(0.0, 0.0) {
        z
    } else {
        (a.norm() / a) * (a - z) / (ONE - a.conj() * z)
    }
}

impl SchurMap {
    fn from_kind(kind: SchurKind) -> Result<Self> {
        match &kind {
            SchurKind::Scale { r } => {
                if !(*r > 0.0 && *r < 1.0) {
                    return Err(invalid(format!("scale must lie in (0,1), got {r}")));
                }
            }
            SchurKind::Automorphism { a, lambda } => {
                in_disk(*a, "automorphism point")?;
                unimodular(*lambda, "rotation")?;
            }
            SchurKind::FiniteBlaschke { zeros, rotation } => {
                if zeros.is_empty() {
                    return Err(invalid(
                        "a Blaschke product without zeros is a unimodular constant",
                    ));
                }
                for a in zeros {
                    in_disk(*a, "Blaschke zero")?;
                }
                unimodular(*rotation, "rotation")?;
            }
            SchurKind::PostScaled { s, .. } => {
                if !(*s > 0.0 && *s <= 1.0) {
                    return Err(invalid(format!("shrink factor must lie in (0,1], got {s}")));
                }
            }
            SchurKind::Composition { .. } => {}
        }
        let mut map = Self {
            kind,
            value_at_zero: Complex64::new(0.0, 0.0),
        };
        map.value_at_zero = match &map.kind {
            SchurKind::Composition { outer, inner } => outer.apply(inner.value_at_zero),
            _ => map.apply(Complex64::new(0.0, 0.0)),
        };
        Ok(map)
    }

    pub fn scale(r: f64) -> Result<Self> {
        Self::from_kind(SchurKind::Scale { r })
    }

    pub fn automorphism(a: Complex64, lambda: Complex64) -> Result<Self> {
        Self::from_kind(SchurKind::Automorphism { a, lambda })
    }

    pub fn blaschke(zeros: Vec<Complex64>, rotation: Complex64) -> Result<Self> {
        Self::from_kind(SchurKind::FiniteBlaschke { zeros, rotation })
    }

    pub fn post_scaled(inner: SchurMap, s: f64) -> Result<Self> {
        Self::from_kind(SchurKind::PostScaled {
            inner: Box::new(inner),
            s,
        })
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: SchurMap, inner: SchurMap) -> Self {
        Self::from_kind(SchurKind::Composition {
            outer: Box::new(outer),
            inner: Box::new(inner),
        })
        .expect("composition of valid maps is valid")
    }

    pub fn kind(&self) -> &SchurKind {
        &self.kind
    }

    pub fn value_at_zero(&self) -> Complex64 {
        self.value_at_zero
    }

    /// Evaluates the map. Valid on the closed disk: every variant is rational
    /// with poles outside it.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        match &self.kind {
            SchurKind::Scale { r } => z * *r,
            SchurKind::Automorphism { a, lambda } => *lambda * (*a - z) / (ONE - a.conj() * z),
            SchurKind::FiniteBlaschke { zeros, rotation } => zeros
                .iter()
                .fold(*rotation, |acc, &a| acc * blaschke_factor(a, z)),
            SchurKind::PostScaled { inner, s } => inner.apply(z) * *s,
            SchurKind::Composition { outer, inner } => outer.apply(inner.apply(z)),
        }
    }

    /// True when the map sends the closed disk into the open disk, so that
    /// `f ∘ ψ` is holomorphic across the circle and its boundary values are
    /// plain evaluations.
    pub fn maps_closure_inside(&self) -> bool {
        match &self.kind {
            SchurKind::Scale { .. } => true,
            SchurKind::Automorphism { .. } | SchurKind::FiniteBlaschke { .. } => false,
            SchurKind::PostScaled { inner, s } => *s < 1.0 || inner.maps_closure_inside(),
            SchurKind::Composition { outer, inner } => {
                inner.maps_closure_inside() || outer.maps_closure_inside()
            }
        }
    }

    /// Short human-readable description, used as a family label.
    pub fn describe(&self) -> String {
        match &self.kind {
            SchurKind::Scale { r } => format!("scale(r={r})"),
            SchurKind::Automorphism { a, .. } => format!("aut(a={:.4}{:+.4}i)", a.re, a.im),
            SchurKind::FiniteBlaschke { zeros, .. } => format!("blaschke(deg={})", zeros.len()),
            SchurKind::PostScaled { inner, s } => format!("{s}*{}", inner.describe()),
            SchurKind::Composition { outer, inner } => {
                format!("{}∘{}", outer.describe(), inner.describe())
            }
        }
    }
}

impl TryFrom<SchurKind> for SchurMap {
    type Error = crate::error::HardyError;

    fn try_from(kind: SchurKind) -> Result<Self> {
        Self::from_kind(kind)
    }
}

impl From<SchurMap> for SchurKind {
    fn from(map: SchurMap) -> Self {
        map.kind
    }
}

/// `φ ∘ ψ`.
pub fn schur_compose(phi: &SchurMap, psi: &SchurMap) -> SchurMap {
    SchurMap::compose(phi.clone(), psi.clone())
}

/// `ψ(z) = r z`.
pub fn scale_map(r: f64) -> Result<SchurMap> {
    SchurMap::scale(r)
}

fn disk_uniform(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let rho = radius * rng.gen::<f64>().sqrt();
    unit(TAU * rng.gen::<f64>()) * rho
}

fn random_rotation(rng: &mut ChaCha8Rng) -> Complex64 {
    unit(TAU * rng.gen::<f64>())
}

/// Möbius automorphism sending `from` to `to`.
fn moebius_between(from: Complex64, to: Complex64) -> SchurMap {
    let minus_one = Complex64::new(-1.0, 0.0);
    // Aut(from, −1) sends from ↦ 0; Aut(−to, −1) sends 0 ↦ to.
    let to_origin = SchurMap::automorphism(from, minus_one).expect("from lies in the disk");
    let from_origin = SchurMap::automorphism(-to, minus_one).expect("to lies in the disk");
    SchurMap::compose(from_origin, to_origin)
}

fn sample_one(rng: &mut ChaCha8Rng, a: f64, max_degree: usize) -> SchurMap {
    match rng.gen_range(0..3) {
        0 => {
            let (lo, hi) = SAMPLER_SCALE_RANGE;
            SchurMap::scale(rng.gen_range(lo..hi)).expect("range inside (0,1)")
        }
        1 => {
            let point = disk_uniform(rng, a);
            SchurMap::automorphism(point, random_rotation(rng)).expect("sampled inside the disk")
        }
        _ => {
            let degree = rng.gen_range(1..=max_degree);
            let zeros = (0..degree)
                .map(|_| disk_uniform(rng, SAMPLER_ZERO_RADIUS))
                .collect();
            let product = SchurMap::blaschke(zeros, random_rotation(rng)).expect("valid zeros");
            let target = disk_uniform(rng, a);
            let pull = moebius_between(product.value_at_zero(), target);
            SchurMap::compose(pull, product)
        }
    }
}

/// Seeded sample of `count` maps from `S_a`.
///
/// Variants are drawn with equal probability from: scale maps with
/// `r ∈ [0.05, 0.95)`; automorphisms with `ψ(0)` area-uniform in `|z| ≤ a`;
/// Blaschke products of degree uniform in `1..=max_degree` with zeros
/// area-uniform in `|z| ≤ 0.8`, post-composed with the automorphism moving
/// their value at 0 to an area-uniform point of `|z| ≤ a`; and compositions
/// of two such maps. Every candidate is checked against `|ψ(0)| ≤ a` and
/// redrawn if it fails.
pub fn sample_family(a: f64, count: usize, seed: u64, max_degree: usize) -> Result<Vec<SchurMap>> {
    if !(0.0..1.0).contains(&a) {
        return Err(invalid(format!("a must lie in [0,1), got {a}")));
    }
    if count == 0 {
        return Err(invalid("count must be positive"));
    }
    if max_degree == 0 {
        return Err(invalid("max_degree must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = if rng.gen_range(0..4) == 3 {
            let first = sample_one(&mut rng, a, max_degree);
            let second = sample_one(&mut rng, a, max_degree);
            SchurMap::compose(first, second)
        } else {
            sample_one(&mut rng, a, max_degree)
        };
        if candidate.value_at_zero().norm() <= a {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// `max |φ|` over `points` equispaced points of the circle `|z| = a`.
pub fn circle_sup(phi: &SchurMap, a: f64, points: usize) -> f64 {
    (0..points)
        .map(|k| phi.apply(unit(TAU * k as f64 / points as f64) * a).norm())
        .fold(0.0, f64::max)
}
