//! Declarative function descriptions read from JSON.

use crate::data::{read_boundary, resample};
use crate::error::{CliError, CliResult};
use hardylab_core::functions::sample_boundary;
use hardylab_core::{
    compose, synth_outer, AnalyticFunction, CircleGrid, ClosedForm, Complex64, PointMass, SchurMap,
};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Boundary data that can be synthesized without a file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedBoundary {
    /// `log ρ = cos θ`, whose outer function is `e^z`.
    Cos,
    /// `log ρ = log|1 − e^{iθ}|`, whose outer function is `1 − z`.
    LogAbsOneMinus,
}

impl NamedBoundary {
    fn log_rho(self, theta: f64) -> f64 {
        match self {
            NamedBoundary::Cos => theta.cos(),
            NamedBoundary::LogAbsOneMinus => (2.0 * (theta / 2.0).sin().abs()).ln(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum BoundarySource {
    /// Log-modulus samples at midpoint nodes; resampled when the grid differs.
    Samples {
        log_rho: Vec<f64>,
    },
    /// Boundary data file, relative paths taken from the spec's directory.
    File {
        path: PathBuf,
    },
    Named {
        name: NamedBoundary,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionBody {
    ClosedForm {
        form: ClosedForm,
    },
    Blaschke {
        zeros: Vec<Complex64>,
    },
    SingularInner {
        masses: Vec<PointMass>,
    },
    Outer {
        boundary: BoundarySource,
        /// Argument of the unimodular constant, in radians.
        #[serde(default)]
        c_angle: f64,
    },
    Quotient {
        num: Box<FunctionSpec>,
        den: Box<FunctionSpec>,
    },
    Product {
        factors: Vec<FunctionSpec>,
    },
    Constant {
        value: Complex64,
    },
    Reciprocal {
        of: Box<FunctionSpec>,
    },
}

/// A function plus an optional chain of self-maps: `f ∘ ψ₁ ∘ ψ₂ ∘ …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    #[serde(flatten)]
    pub body: FunctionBody,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compose: Vec<SchurMap>,
}

impl From<FunctionBody> for FunctionSpec {
    fn from(body: FunctionBody) -> Self {
        Self {
            body,
            compose: Vec::new(),
        }
    }
}

impl FunctionSpec {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("function spec: {e}")))
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs always serialize")
    }

    /// Builds the function. Outer parts are synthesized on `grid`; file
    /// paths are resolved against `base`.
    pub fn build(&self, grid: &CircleGrid, base: &Path) -> CliResult<AnalyticFunction> {
        let mut f = match &self.body {
            FunctionBody::ClosedForm { form } => AnalyticFunction::closed(*form),
            FunctionBody::Blaschke { zeros } => AnalyticFunction::blaschke(zeros.clone())?,
            FunctionBody::SingularInner { masses } => {
                AnalyticFunction::singular_inner(masses.clone())?
            }
            FunctionBody::Outer { boundary, c_angle } => {
                let log_rho = match boundary {
                    BoundarySource::Samples { log_rho } => {
                        if log_rho.is_empty() || log_rho.iter().any(|v| !v.is_finite()) {
                            return Err(CliError::data(
                                "outer samples must be finite and non-empty",
                            ));
                        }
                        resample(log_rho, grid.size())
                    }
                    BoundarySource::File { path } => {
                        resample(&read_boundary(&base.join(path))?.log_rho, grid.size())
                    }
                    BoundarySource::Named { name } => sample_boundary(grid, |t| name.log_rho(t)),
                };
                synth_outer(&log_rho, Complex64::from_polar(1.0, *c_angle), grid)?
            }
            FunctionBody::Quotient { num, den } => {
                AnalyticFunction::quotient(num.build(grid, base)?, den.build(grid, base)?)?
            }
            FunctionBody::Product { factors } => AnalyticFunction::product(
                factors
                    .iter()
                    .map(|s| s.build(grid, base))
                    .collect::<CliResult<Vec<_>>>()?,
            ),
            FunctionBody::Constant { value } => {
                if !(value.re.is_finite() && value.im.is_finite()) {
                    return Err(CliError::data("constant must be finite"));
                }
                AnalyticFunction::constant(*value)
            }
            FunctionBody::Reciprocal { of } => of.build(grid, base)?.reciprocal()?,
        };
        for psi in &self.compose {
            f = compose(&f, psi);
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hardylab_core::{make_grid, DiskPoint};

    #[test]
    fn parses_documented_shapes() {
        let s = FunctionSpec::from_json(
            r#"{"kind":"reciprocal","of":{"kind":"singular_inner","masses":[{"angle":0.0,"mass":1.0}]}}"#,
        )
        .unwrap();
        let g = make_grid(64).unwrap();
        let f = s.build(&g, Path::new(".")).unwrap();
        let z = DiskPoint::real(0.5).unwrap();
        assert!((f.eval(z).unwrap().re - 3f64.exp()).abs() < 1e-12);

        let s = FunctionSpec::from_json(
            r#"{"kind":"closed_form","form":"exp_z","compose":[{"kind":"scale","r":0.5}]}"#,
        )
        .unwrap();
        let f = s.build(&g, Path::new(".")).unwrap();
        assert!((f.eval(z).unwrap().re - 0.25f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in [
            r#"{"kind":"nope"}"#,
            r#"{"kind":"blaschke","zeros":[[0.5]]}"#,
            r#"{"kind":"constant"}"#,
            "not json",
        ] {
            assert_eq!(
                FunctionSpec::from_json(bad).unwrap_err().kind,
                crate::ExitKind::Parse,
                "{bad}"
            );
        }
        let g = make_grid(64).unwrap();
        let outside =
            FunctionSpec::from_json(r#"{"kind":"blaschke","zeros":[[1.5,0.0]]}"#).unwrap();
        assert_eq!(
            outside.build(&g, Path::new(".")).unwrap_err().kind,
            crate::ExitKind::Parse
        );
        let zero_den = FunctionSpec::from_json(
            r#"{"kind":"quotient","num":{"kind":"constant","value":[1.0,0.0]},
                "den":{"kind":"closed_form","form":"identity"}}"#,
        )
        .unwrap();
        assert!(zero_den.build(&g, Path::new(".")).is_err());
    }

    #[test]
    fn named_boundaries() {
        let g = make_grid(1024).unwrap();
        let s: FunctionSpec = FunctionBody::Outer {
            boundary: BoundarySource::Named {
                name: NamedBoundary::Cos,
            },
            c_angle: 0.0,
        }
        .into();
        let f = s.build(&g, Path::new(".")).unwrap();
        let z = DiskPoint::polar(0.7, 1.0).unwrap();
        assert!((f.eval(z).unwrap() - z.value().exp()).norm() < 1e-8);
    }
}
