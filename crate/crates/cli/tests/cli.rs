use hardylab_cli::{BoundarySource, FunctionBody, FunctionSpec, NamedBoundary};
use hardylab_core::{ClosedForm, Complex64, PointMass, SchurMap};
use proptest::prelude::*;
use serde_json::Value;
use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hardylab"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = bin().args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(run: &Run) -> Value {
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    serde_json::from_str(&run.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn lines(n: usize, f: impl Fn(f64) -> f64) -> String {
    (0..n)
        .map(|j| format!("{}\n", f(TAU * (j as f64 + 0.5) / n as f64)))
        .collect()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn value(v: &Value) -> Complex64 {
    Complex64::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn synth_zero_data_gives_constant() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "zero.txt", &lines(64, |_| 0.0));
    let r = json(&run(&[
        "synth",
        s(&data),
        "--c-angle",
        "0.7",
        "--grid",
        "64",
    ]));
    assert_eq!(r["schema_version"], 1);
    let c = Complex64::from_polar(1.0, 0.7);
    for row in r["table"].as_array().unwrap() {
        assert!((value(&row["value"]) - c).norm() < 1e-14);
    }
}

#[test]
fn synth_cos_reproduces_exp() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "cos.txt", &lines(4096, f64::cos));
    let out = dir.path().join("out");
    let r = run(&["synth", s(&data), "--out", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["resampled"], false);
    let rows = report["table"].as_array().unwrap();
    assert_eq!(rows.len(), 96);
    for row in rows {
        let z = Complex64::from_polar(row["r"].as_f64().unwrap(), row["theta"].as_f64().unwrap());
        assert!((value(&row["value"]) - z.exp()).norm() < 1e-8);
    }
    let csv = std::fs::read_to_string(out.join("table.csv")).unwrap();
    assert!(csv.starts_with("r,theta,re,im,modulus\n"));
    assert_eq!(csv.lines().count(), 97);

    // The function artifact classifies as outer.
    let c = json(&run(&["classify", s(&out.join("function.json"))]));
    assert_eq!(c["outer"]["classification"], "outer");
}

#[test]
fn synth_modulus_file_reproduces_one_minus_z() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        "modulus\n{}",
        lines(4096, |t| (1.0 - Complex64::from_polar(1.0, t)).norm())
    );
    let data = write(dir.path(), "mod.txt", &body);
    let r = json(&run(&["synth", s(&data)]));
    assert_eq!(r["modulus_input"], true);
    let row = r["table"]
        .as_array()
        .unwrap()
        .iter()
        .find(|row| row["r"] == 0.5 && row["theta"] == 0.0)
        .unwrap();
    assert!((value(&row["value"]).norm() - 0.5).abs() < 1e-3);
}

#[test]
fn synth_resamples_other_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "cos.txt", &lines(1000, f64::cos));
    let r = json(&run(&["synth", s(&data), "--grid", "1024"]));
    assert_eq!(r["resampled"], true);
    assert_eq!(r["samples_read"], 1000);
    for row in r["table"].as_array().unwrap() {
        let z = Complex64::from_polar(row["r"].as_f64().unwrap(), row["theta"].as_f64().unwrap());
        assert!((value(&row["value"]) - z.exp()).norm() < 1e-4);
    }
}

#[test]
fn classify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let recip = write(
        dir.path(),
        "recip.json",
        r#"{"kind":"reciprocal","of":{"kind":"singular_inner","masses":[{"angle":0.0,"mass":1.0}]}}"#,
    );
    let r = json(&run(&["classify", s(&recip)]));
    assert_eq!(r["smirnov"]["classification"], "not-smirnov");
    assert!((r["smirnov"]["gap"].as_f64().unwrap() - 1.0).abs() < 2e-3);
    assert_eq!(r["ui"]["verdict"], "not");
    assert_eq!(r["criteria_agree"], true);
    assert!(r["error"].is_null());
    assert_eq!(r["config"]["grid"], 4096);

    let lin = write(
        dir.path(),
        "lin.json",
        r#"{"kind":"closed_form","form":"one_minus_z"}"#,
    );
    let r = json(&run(&["classify", s(&lin)]));
    assert_eq!(r["smirnov"]["classification"], "smirnov");
    assert_eq!(r["outer"]["classification"], "outer");

    let five = write(
        dir.path(),
        "five.json",
        r#"{"kind":"constant","value":[5.0,0.0]}"#,
    );
    let r = json(&run(&["classify", s(&five)]));
    assert_eq!(r["smirnov"]["classification"], "smirnov");
    assert_eq!(r["outer"]["classification"], "outer");

    let z = write(
        dir.path(),
        "z.json",
        r#"{"kind":"closed_form","form":"identity"}"#,
    );
    let r = json(&run(&["classify", s(&z)]));
    assert_eq!(r["zero_free"], false);
    assert!(r["outer"].is_null());
}

#[test]
fn classify_spec_with_file_boundary_and_composition() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "cos.txt", &lines(512, f64::cos));
    let spec = write(
        dir.path(),
        "f.json",
        r#"{"kind":"outer","boundary":{"source":"file","path":"cos.txt"},
            "compose":[{"kind":"automorphism","a":[0.3,0.1],"lambda":[0.0,1.0]}]}"#,
    );
    let r = json(&run(&["classify", s(&spec), "--grid", "1024"]));
    assert_eq!(r["outer"]["classification"], "outer");
}

#[test]
fn gauge_examples() {
    let dir = tempfile::tempdir().unwrap();
    let lin = write(
        dir.path(),
        "lin.json",
        r#"{"kind":"closed_form","form":"one_minus_z"}"#,
    );
    let report = dir.path().join("classified");
    assert_eq!(run(&["classify", s(&lin), "--out", s(&report)]).code, 0);
    let g = json(&run(&[
        "gauge",
        s(&report.join("report.json")),
        "--levels",
        "20",
    ]));
    assert_eq!(g["knots"].as_array().unwrap().len(), 20);
    assert!(g["member_integrals"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v.as_f64().unwrap() <= 1.0));
    assert_eq!(g["integrals_bounded"], true);
    assert_eq!(g["all_bounds_hold"], true);

    let e = write(
        dir.path(),
        "e.json",
        &format!(r#"{{"kind":"constant","value":[{},0.0]}}"#, 1f64.exp()),
    );
    let g = json(&run(&["gauge", s(&e), "--levels", "5"]));
    let knots: Vec<f64> = g["knots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert!(knots.iter().all(|&k| k > 1.0 - 1e-12), "{knots:?}");

    let one = write(
        dir.path(),
        "one.json",
        r#"{"kind":"constant","value":[1.0,0.0]}"#,
    );
    let out = dir.path().join("g1");
    assert_eq!(
        run(&["gauge", s(&one), "--levels", "1", "--out", s(&out)]).code,
        0
    );
    let g: Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(g["knots"].as_array().unwrap().len(), 1);
    assert!(g["member_integrals"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v.as_f64().unwrap() == 0.0));
    let file: Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("gauge.json")).unwrap()).unwrap();
    assert_eq!(file["knots"], g["knots"]);
}

#[test]
fn harness_examples() {
    let dir = tempfile::tempdir().unwrap();
    let small = ["--grid", "1024", "--count", "10"];
    let ez = write(
        dir.path(),
        "ez.json",
        r#"{"kind":"closed_form","form":"exp_z"}"#,
    );
    let out = dir.path().join("ez");
    let mut args = vec![
        "harness",
        s(&ez),
        "--mode",
        "outer",
        "--a",
        "0.5",
        "--out",
        s(&out),
    ];
    args.extend(small);
    assert_eq!(run(&args).code, 0);
    let r: Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(r["report"]["log_plus"]["verdict"], "uniformly-integrable");
    assert_eq!(r["report"]["log_minus"]["verdict"], "uniformly-integrable");
    for name in ["tails_log_plus.csv", "tails_log_minus.csv"] {
        let csv = std::fs::read_to_string(out.join(name)).unwrap();
        assert!(csv.starts_with("t,T\n"));
        assert_eq!(csv.lines().count(), 102);
    }

    let eh = write(
        dir.path(),
        "eh.json",
        r#"{"kind":"closed_form","form":"exp_herglotz"}"#,
    );
    // Coarser grids do not resolve radii close enough to 1 for the tail to settle.
    let r = json(&run(&[
        "harness",
        s(&eh),
        "--mode",
        "smirnov",
        "--count",
        "10",
    ]));
    assert_eq!(r["report"]["log_plus"]["verdict"], "not");
    assert!(r["family"]
        .as_array()
        .unwrap()
        .iter()
        .any(|m| m["kind"] == "scale"));

    let one = write(
        dir.path(),
        "one.json",
        r#"{"kind":"constant","value":[1.0,0.0]}"#,
    );
    let mut args = vec!["harness", s(&one)];
    args.extend(small);
    let r = json(&run(&args));
    assert_eq!(r["report"]["log_plus"]["verdict"], "uniformly-integrable");

    let z = write(
        dir.path(),
        "z.json",
        r#"{"kind":"closed_form","form":"identity"}"#,
    );
    assert_eq!(
        run(&["harness", s(&z), "--mode", "outer", "--grid", "256"]).code,
        2
    );
}

#[test]
fn harness_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let ez = write(
        dir.path(),
        "ez.json",
        r#"{"kind":"closed_form","form":"exp_z"}"#,
    );
    let outs: Vec<PathBuf> = ["a", "b"].iter().map(|n| dir.path().join(n)).collect();
    for (o, threads) in outs.iter().zip(["1", "3"]) {
        let st = bin()
            .args([
                "harness",
                s(&ez),
                "--mode",
                "outer",
                "--grid",
                "512",
                "--count",
                "8",
                "--seed",
                "11",
            ])
            .args(["--out", s(o)])
            .env("HARDYLAB_THREADS", threads)
            .status()
            .unwrap();
        assert!(st.success());
    }
    for name in ["report.json", "tails_log_plus.csv", "tails_log_minus.csv"] {
        assert_eq!(
            std::fs::read(outs[0].join(name)).unwrap(),
            std::fs::read(outs[1].join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let lin = write(
        dir.path(),
        "lin.json",
        r#"{"kind":"closed_form","form":"one_minus_z"}"#,
    );
    assert_eq!(run(&["classify", "missing.json"]).code, 2);
    assert_eq!(
        run(&["classify", s(&write(dir.path(), "bad.json", "{"))]).code,
        2
    );
    assert_eq!(run(&["classify", s(&lin), "--grid", "2"]).code, 2);
    assert_eq!(run(&["classify", s(&lin), "--bogus"]).code, 2);
    assert_eq!(
        run(&["synth", s(&write(dir.path(), "t.txt", "1\nabc\n"))]).code,
        2
    );
    assert_eq!(
        run(&["synth", s(&write(dir.path(), "n.txt", "1\nNaN\n"))]).code,
        3
    );
    assert_eq!(
        run(&["synth", s(&write(dir.path(), "m.txt", "modulus\n1\n0\n"))]).code,
        3
    );
    assert_eq!(
        run(&["gauge", s(&lin), "--grid", "256", "--t-cap", "0.1"]).code,
        5
    );
    let bad_threads = bin()
        .args(["classify", s(&lin), "--grid", "256"])
        .env("HARDYLAB_THREADS", "zero")
        .status();
    assert_eq!(bad_threads.unwrap().code(), Some(2));

    // Every node diverges: estimation failure with a partial report.
    let blowup = write(
        dir.path(),
        "blowup.json",
        r#"{"kind":"reciprocal","of":{"kind":"singular_inner","masses":[{"angle":0.0,"mass":1e15}]}}"#,
    );
    let r = run(&["classify", s(&blowup), "--grid", "256"]);
    assert_eq!(r.code, 4, "{}", r.stderr);
    let partial: Value = serde_json::from_str(&r.stdout).unwrap();
    assert!(partial["error"]
        .as_str()
        .unwrap()
        .contains("boundary estimation failed"));
    assert!(partial["smirnov"].is_null());
}

#[test]
fn verdicts_do_not_change_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let eh = write(
        dir.path(),
        "eh.json",
        r#"{"kind":"closed_form","form":"exp_herglotz"}"#,
    );
    let r = json(&run(&["classify", s(&eh), "--grid", "1024"]));
    assert_eq!(r["smirnov"]["classification"], "not-smirnov");
}

fn leaf() -> impl Strategy<Value = FunctionSpec> {
    let c = (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b));
    let zero = (0.0..0.95f64, 0.0..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t));
    prop_oneof![
        prop_oneof![
            Just(ClosedForm::Identity),
            Just(ClosedForm::OneMinusZ),
            Just(ClosedForm::ExpZ),
            Just(ClosedForm::ExpHerglotz)
        ]
        .prop_map(|form| FunctionBody::ClosedForm { form }.into()),
        prop::collection::vec(zero, 1..4).prop_map(|zeros| FunctionBody::Blaschke { zeros }.into()),
        prop::collection::vec((0.0..TAU, 0.0..5.0f64), 1..3).prop_map(|m| {
            FunctionBody::SingularInner {
                masses: m
                    .into_iter()
                    .map(|(angle, mass)| PointMass { angle, mass })
                    .collect(),
            }
            .into()
        }),
        (prop::collection::vec(-3.0..3.0f64, 1..16), -7.0..7.0f64).prop_map(
            |(log_rho, c_angle)| {
                FunctionBody::Outer {
                    boundary: BoundarySource::Samples { log_rho },
                    c_angle,
                }
                .into()
            }
        ),
        Just(
            FunctionBody::Outer {
                boundary: BoundarySource::Named {
                    name: NamedBoundary::Cos
                },
                c_angle: 0.0
            }
            .into()
        ),
        Just(
            FunctionBody::Outer {
                boundary: BoundarySource::File {
                    path: "data/b.txt".into()
                },
                c_angle: 1.0
            }
            .into()
        ),
        c.prop_map(|value| FunctionBody::Constant { value }.into()),
    ]
}

fn spec_tree() -> impl Strategy<Value = FunctionSpec> {
    leaf().prop_recursive(3, 12, 3, |inner| {
        let maps = prop::collection::vec(
            (0.01..0.99f64).prop_map(|r| SchurMap::scale(r).unwrap()),
            0..3,
        );
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(n, d)| FunctionBody::Quotient {
                num: Box::new(n),
                den: Box::new(d)
            }
            .into()),
            prop::collection::vec(inner.clone(), 1..3)
                .prop_map(|factors| FunctionBody::Product { factors }.into()),
            inner
                .clone()
                .prop_map(|of| FunctionBody::Reciprocal { of: Box::new(of) }.into()),
            (inner, maps).prop_map(|(mut f, compose): (FunctionSpec, _)| {
                f.compose = compose;
                f
            }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn spec_serialization_is_a_fixed_point(spec in spec_tree()) {
        let once = spec.to_json();
        let parsed = FunctionSpec::from_json(&once).unwrap();
        prop_assert_eq!(&parsed, &spec);
        prop_assert_eq!(parsed.to_json(), once);
    }
}
