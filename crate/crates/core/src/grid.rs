//! Circle discretization and the reproducing kernels of the disk.
//!
//! Every boundary integral in the crate is a mean against `dθ/2π` computed
//! with the uniform midpoint rule. Nodes sit at `θ_j = 2π(j + 1/2)/N`, so no
//! node lands on `θ = 0`, where most of the interesting boundary
//! singularities live.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, HardyError, Result};

/// Smallest grid accepted by [`CircleGrid::new`].
pub const MIN_GRID: usize = 4;

/// Default number of nodes used for classification.
pub const DEFAULT_GRID: usize = 4096;

/// Midpoint quadrature grid on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl CircleGrid {
    pub fn new(size: usize) -> Result<Self> {
        if size < MIN_GRID {
            return Err(invalid(format!(
                "grid size must be at least {MIN_GRID}, got {size}"
            )));
        }
        let n = size as f64;
        let nodes = (0..size).map(|j| TAU * (j as f64 + 0.5) / n).collect();
        let weights = vec![TAU / n; size];
        Ok(Self { nodes, weights })
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Unit-modulus points `e^{iθ_j}`.
    pub fn boundary_points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.nodes.iter().map(|&t| unit(t))
    }

    /// Smallest power-of-two refinement of this grid with `r^M ≤ e^{−64}`,
    /// so that the midpoint mean over the circle of radius `r` does not alias.
    pub fn refined_for(&self, r: f64) -> Result<CircleGrid> {
        if !(r > 0.0 && r < 1.0) {
            return Err(invalid(format!("radius must lie in (0,1), got {r}")));
        }
        let decay = -r.ln();
        let mut size = self.size();
        while (size as f64) * decay < 64.0 {
            size *= 2;
        }
        if size == self.size() {
            Ok(self.clone())
        } else {
            CircleGrid::new(size)
        }
    }

    /// Mean of `samples` against `dθ/2π`.
    ///
    /// Non-finite samples are rejected: they mean a boundary singularity
    /// landed on (or numerically next to) a node.
    pub fn mean(&self, samples: &[f64]) -> Result<f64> {
        if samples.len() != self.size() {
            return Err(invalid(format!(
                "expected {} samples, got {}",
                self.size(),
                samples.len()
            )));
        }
        let mut acc = 0.0;
        for (index, (&w, &s)) in self.weights.iter().zip(samples).enumerate() {
            if !s.is_finite() {
                return Err(HardyError::NonIntegrable { index, value: s });
            }
            acc += w * s;
        }
        Ok(acc / TAU)
    }

    /// Mean of `f(θ_j)` over the grid.
    pub fn mean_of(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        let samples: Vec<f64> = self.nodes.iter().map(|&t| f(t)).collect();
        self.mean(&samples)
    }

    /// Poisson extension of grid samples, evaluated at `z`.
    pub fn poisson_extension(&self, samples: &[f64], z: DiskPoint) -> Result<f64> {
        let weighted: Vec<f64> = self
            .nodes
            .iter()
            .zip(samples)
            .map(|(&t, &s)| poisson_kernel(t, z) * s)
            .collect();
        self.mean(&weighted)
    }
}

/// Builds the midpoint grid with `size` nodes.
pub fn make_grid(size: usize) -> Result<CircleGrid> {
    CircleGrid::new(size)
}

/// `circle_mean` in functional form.
pub fn circle_mean(samples: &[f64], grid: &CircleGrid) -> Result<f64> {
    grid.mean(samples)
}

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint(Complex64::new(0.0, 0.0));

    pub fn new(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() && z.norm_sqr() < 1.0 {
            Ok(Self(z))
        } else {
            Err(HardyError::OutsideDisk { re: z.re, im: z.im })
        }
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    /// `r e^{iθ}`, computed as `e^{iθ}` scaled by `r` so that it agrees
    /// bit-for-bit with a scale map applied to a boundary node.
    pub fn polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(unit(theta) * r)
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl TryFrom<Complex64> for DiskPoint {
    type Error = HardyError;

    fn try_from(z: Complex64) -> Result<Self> {
        Self::new(z)
    }
}

impl From<DiskPoint> for Complex64 {
    fn from(p: DiskPoint) -> Self {
        p.0
    }
}

/// `e^{iθ}`.
pub fn unit(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Herglotz kernel `(e^{iθ} + z)/(e^{iθ} − z)`.
///
/// Assembled from its real and imaginary parts so that the real part is
/// exactly [`poisson_kernel`].
pub fn herglotz_kernel(theta: f64, z: DiskPoint) -> Complex64 {
    let e = unit(theta);
    let z = z.value();
    let d = (e - z).norm_sqr();
    let im = 2.0 * (z * e.conj()).im;
    Complex64::new((1.0 - z.norm_sqr()) / d, im / d)
}

/// Poisson kernel `(1 − |z|²)/|e^{iθ} − z|²`.
pub fn poisson_kernel(theta: f64, z: DiskPoint) -> f64 {
    let e = unit(theta);
    let z = z.value();
    (1.0 - z.norm_sqr()) / (e - z).norm_sqr()
}
