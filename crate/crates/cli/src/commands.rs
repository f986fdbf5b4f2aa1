use crate::config::RunConfig;
use crate::data::{read_boundary, resample};
use crate::error::{exit_kind, CliError, CliResult};
use crate::spec::{BoundarySource, FunctionBody, FunctionSpec};
use hardylab_core::classify::radial_family;
use hardylab_core::integrability::{build_gauge_capped, gauge_integrals};
use hardylab_core::{
    build_gauge, criteria_agree, gauge_implies_ui, harness_family, outer_test, smirnov_test,
    synth_outer, ui_smirnov_test, verify_composition_theorem, AnalyticFunction, Clip, Complex64,
    DiskPoint, GaugeBound, HardyError, HarnessMode, HarnessReport, OuterVerdict, SchurMap,
    SmirnovVerdict, UIReport,
};
use serde::Serialize;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

/// Lattice for the synth evaluation table.
pub const TABLE_RADII: [f64; 6] = [0.0, 0.25, 0.5, 0.75, 0.9, 0.99];
pub const TABLE_ANGLES: usize = 16;

/// Slack allowed on the gauge integrals.
const GAUGE_SLACK: f64 = 1e-12;
const GAUGE_CHECKS: usize = 100;

/// A JSON report and extra files written next to it under `--out`.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub report: String,
    pub artifacts: Vec<(String, String)>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports always serialize");
    s.push('\n');
    s
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub r: f64,
    pub theta: f64,
    pub value: Complex64,
}

#[derive(Serialize)]
struct SynthReport<'a> {
    schema_version: u32,
    command: &'static str,
    config: &'a RunConfig,
    samples_read: usize,
    modulus_input: bool,
    resampled: bool,
    c_angle: f64,
    table: Vec<TableRow>,
}

pub fn synth(data: &Path, c_angle: f64, cfg: &RunConfig) -> CliResult<Output> {
    if !c_angle.is_finite() {
        return Err(CliError::parse("--c-angle must be finite"));
    }
    let input = read_boundary(data)?;
    let grid = cfg.classify_config()?.grid;
    let log_rho = resample(&input.log_rho, grid.size());
    let f = synth_outer(&log_rho, Complex64::from_polar(1.0, c_angle), &grid)?;
    let mut table = Vec::with_capacity(TABLE_RADII.len() * TABLE_ANGLES);
    for &r in &TABLE_RADII {
        for k in 0..TABLE_ANGLES {
            let theta = std::f64::consts::TAU * k as f64 / TABLE_ANGLES as f64;
            table.push(TableRow {
                r,
                theta,
                value: f.eval(DiskPoint::polar(r, theta)?)?,
            });
        }
    }
    let mut csv = String::from("r,theta,re,im,modulus\n");
    for row in &table {
        csv += &format!(
            "{},{},{},{},{}\n",
            row.r,
            row.theta,
            row.value.re,
            row.value.im,
            row.value.norm()
        );
    }
    let spec: FunctionSpec = FunctionBody::Outer {
        boundary: BoundarySource::Samples { log_rho },
        c_angle,
    }
    .into();
    let report = SynthReport {
        schema_version: SCHEMA_VERSION,
        command: "synth",
        config: cfg,
        samples_read: input.log_rho.len(),
        modulus_input: input.modulus_input,
        resampled: input.log_rho.len() != grid.size(),
        c_angle,
        table,
    };
    Ok(Output {
        report: to_json(&report),
        artifacts: vec![
            ("function.json".into(), spec.to_json() + "\n"),
            ("table.csv".into(), csv),
        ],
    })
}

#[derive(Serialize)]
pub struct ClassifyReport<'a> {
    pub schema_version: u32,
    pub command: &'static str,
    pub config: &'a RunConfig,
    pub function: &'a FunctionSpec,
    pub zero_free: Option<bool>,
    pub smirnov: Option<SmirnovVerdict>,
    pub ui: Option<UIReport>,
    pub criteria_agree: Option<bool>,
    pub outer: Option<OuterVerdict>,
    pub error: Option<String>,
}

pub fn classify(spec_path: &Path, cfg: &RunConfig) -> CliResult<Output> {
    let spec = FunctionSpec::read(spec_path)?;
    classify_spec(&spec, base_dir(spec_path), cfg)
}

pub fn classify_spec(spec: &FunctionSpec, base: &Path, cfg: &RunConfig) -> CliResult<Output> {
    let ccfg = cfg.classify_config()?;
    let f = spec.build(&ccfg.grid, base)?;
    let mut report = ClassifyReport {
        schema_version: SCHEMA_VERSION,
        command: "classify",
        config: cfg,
        function: spec,
        zero_free: Some(f.is_zero_free()),
        smirnov: None,
        ui: None,
        criteria_agree: None,
        outer: None,
        error: None,
    };
    let outcome = (|| -> Result<(), HardyError> {
        report.smirnov = Some(smirnov_test(&f, &ccfg)?);
        report.ui = Some(ui_smirnov_test(&f, &ccfg)?);
        if let (Some(s), Some(u)) = (&report.smirnov, &report.ui) {
            report.criteria_agree = Some(criteria_agree(s.classification, u.verdict));
        }
        if f.is_zero_free() {
            report.outer = Some(outer_test(&f, &ccfg)?);
        }
        Ok(())
    })();
    match outcome {
        Ok(()) => Ok(Output {
            report: to_json(&report),
            artifacts: Vec::new(),
        }),
        Err(e) => {
            report.error = Some(e.to_string());
            Err(CliError {
                kind: exit_kind(&e),
                message: e.to_string(),
                partial: Some(to_json(&report)),
            })
        }
    }
}

#[derive(Serialize)]
struct GaugeReport<'a> {
    schema_version: u32,
    command: &'static str,
    config: &'a RunConfig,
    function: &'a FunctionSpec,
    levels: usize,
    t_cap: Option<f64>,
    labels: Vec<String>,
    knots: Vec<f64>,
    asymptotic_slope: usize,
    member_integrals: Vec<f64>,
    sup_integral: f64,
    integrals_bounded: bool,
    tail_bounds: Vec<GaugeBound>,
    all_bounds_hold: bool,
}

#[derive(Serialize)]
struct GaugeFile<'a> {
    schema_version: u32,
    knots: &'a [f64],
}

/// Reads a gauge source: either a classify report (whose function and
/// config are reused) or a bare function spec.
pub fn gauge_source(path: &Path, base_cfg: RunConfig) -> CliResult<(FunctionSpec, RunConfig)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::parse(format!("gauge source: {e}")))?;
    if value.get("command").and_then(|c| c.as_str()) == Some("classify") {
        let spec = serde_json::from_value(value["function"].clone())
            .map_err(|e| CliError::parse(format!("classify report function: {e}")))?;
        let cfg = serde_json::from_value(value["config"].clone())
            .map_err(|e| CliError::parse(format!("classify report config: {e}")))?;
        Ok((spec, cfg))
    } else {
        Ok((FunctionSpec::from_json(&text)?, base_cfg))
    }
}

pub fn gauge(
    spec: &FunctionSpec,
    base: &Path,
    t_cap: Option<f64>,
    cfg: &RunConfig,
) -> CliResult<Output> {
    let ccfg = cfg.classify_config()?;
    let f = spec.build(&ccfg.grid, base)?;
    let family = radial_family(&f, &ccfg, Clip::LogPlus)?;
    let g = match t_cap {
        Some(cap) if !(cap > 0.0 && cap.is_finite()) => {
            return Err(CliError::parse("--t-cap must be positive"))
        }
        Some(cap) => build_gauge_capped(&family, cfg.levels, cap)?,
        None => build_gauge(&family, cfg.levels)?,
    };
    let member_integrals = gauge_integrals(&family, &g);
    let sup_integral = member_integrals.iter().cloned().fold(0.0, f64::max);
    let knots = g.knots().to_vec();
    let first = knots[0];
    let end = knots[knots.len() - 1].max(family.max_value()) + 1.0;
    let tail_bounds = (1..=GAUGE_CHECKS)
        .map(|i| {
            gauge_implies_ui(
                &family,
                &g,
                first + (end - first) * i as f64 / GAUGE_CHECKS as f64,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let report = GaugeReport {
        schema_version: SCHEMA_VERSION,
        command: "gauge",
        config: cfg,
        function: spec,
        levels: cfg.levels,
        t_cap,
        labels: family.labels().to_vec(),
        asymptotic_slope: g.asymptotic_slope(),
        sup_integral,
        integrals_bounded: sup_integral <= 1.0 + GAUGE_SLACK,
        all_bounds_hold: tail_bounds.iter().all(|b| b.holds),
        member_integrals,
        tail_bounds,
        knots,
    };
    let file = to_json(&GaugeFile {
        schema_version: SCHEMA_VERSION,
        knots: &report.knots,
    });
    Ok(Output {
        report: to_json(&report),
        artifacts: vec![("gauge.json".into(), file)],
    })
}

#[derive(Serialize)]
struct HarnessOutput<'a> {
    schema_version: u32,
    command: &'static str,
    config: &'a RunConfig,
    function: &'a FunctionSpec,
    family: &'a [SchurMap],
    report: &'a HarnessReport,
}

pub fn tails_csv(report: &UIReport) -> String {
    let mut csv = String::from("t,T\n");
    for (t, v) in report.thresholds.iter().zip(&report.tail_sup) {
        csv += &format!("{t},{v}\n");
    }
    csv
}

pub fn harness(spec_path: &Path, cfg: &RunConfig) -> CliResult<Output> {
    let spec = FunctionSpec::read(spec_path)?;
    harness_spec(&spec, base_dir(spec_path), cfg)
}

pub fn harness_spec(spec: &FunctionSpec, base: &Path, cfg: &RunConfig) -> CliResult<Output> {
    let ccfg = cfg.classify_config()?;
    let f: AnalyticFunction = spec.build(&ccfg.grid, base)?;
    let family = harness_family(cfg.a, cfg.count, cfg.seed, cfg.max_degree, &ccfg)?;
    let report = verify_composition_theorem(&f, cfg.a, &family, cfg.mode, &ccfg)?;
    let mut artifacts = vec![(
        "tails_log_plus.csv".to_string(),
        tails_csv(&report.log_plus),
    )];
    if let (HarnessMode::Outer, Some(minus)) = (cfg.mode, &report.log_minus) {
        artifacts.push(("tails_log_minus.csv".to_string(), tails_csv(minus)));
    }
    let out = HarnessOutput {
        schema_version: SCHEMA_VERSION,
        command: "harness",
        config: cfg,
        function: spec,
        family: &family,
        report: &report,
    };
    Ok(Output {
        report: to_json(&out),
        artifacts,
    })
}
