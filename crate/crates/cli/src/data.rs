//! Boundary data files: one real per line, `log ρ` by default, or `|f*|`
//! values when the first line reads `modulus`.

use crate::error::{CliError, CliResult};
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    /// Log-modulus samples at the midpoint nodes of a grid of their own length.
    pub log_rho: Vec<f64>,
    pub modulus_input: bool,
}

pub fn parse_boundary(text: &str) -> CliResult<BoundaryData> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .peekable();
    let modulus_input =
        matches!(lines.peek(), Some((_, l)) if l.trim().eq_ignore_ascii_case("modulus"));
    if modulus_input {
        lines.next();
    }
    let mut log_rho = Vec::new();
    for (i, line) in lines {
        let v: f64 = line.trim().parse().map_err(|_| {
            CliError::parse(format!("line {}: not a number: {:?}", i + 1, line.trim()))
        })?;
        let v = if modulus_input {
            if !(v > 0.0) {
                return Err(CliError::data(format!(
                    "line {}: modulus must be positive, got {v}",
                    i + 1
                )));
            }
            v.ln()
        } else {
            v
        };
        if !v.is_finite() {
            return Err(CliError::data(format!("line {}: non-finite sample", i + 1)));
        }
        log_rho.push(v);
    }
    if log_rho.is_empty() {
        return Err(CliError::parse("boundary data file holds no samples"));
    }
    Ok(BoundaryData {
        log_rho,
        modulus_input,
    })
}

pub fn read_boundary(path: &Path) -> CliResult<BoundaryData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    parse_boundary(&text)
}

/// Periodic linear interpolation from one midpoint grid to another.
/// Returns the input unchanged when the sizes agree.
pub fn resample(samples: &[f64], size: usize) -> Vec<f64> {
    let m = samples.len();
    if m == size {
        return samples.to_vec();
    }
    (0..size)
        .map(|j| {
            let p = (j as f64 + 0.5) * m as f64 / size as f64 - 0.5;
            let lo = p.floor();
            let frac = p - lo;
            let i0 = (lo as i64).rem_euclid(m as i64) as usize;
            let i1 = (i0 + 1) % m;
            samples[i0] * (1.0 - frac) + samples[i1] * frac
        })
        .collect()
}
