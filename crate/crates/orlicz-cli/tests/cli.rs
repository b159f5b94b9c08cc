//! End-to-end checks of the `orlicz` binary: exit codes, output formats,
//! file handling, and run-to-run determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orlicz"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn write_matrix(dir: &Path, name: &str, rows: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, rows).unwrap();
    path.display().to_string()
}

#[test]
fn norm_reports_both_norms_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "diag.csv", "3,0\n0,4\n");
    let out = run(&["norm", "--phi", "power:2", "--matrix", &m]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("luxemburg"), "missing gauge norm line: {text}");
    assert!(text.contains("orlicz"), "missing pairing norm line: {text}");
}

#[test]
fn norm_json_is_valid_and_carries_the_values() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "diag.csv", "3,0\n0,4\n");
    let out = run(&["--format", "json", "norm", "--phi", "power:2", "--matrix", &m]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let lux = v["luxemburg"]["value"].as_f64().unwrap();
    let orl = v["orlicz"]["value"].as_f64().unwrap();
    assert!((lux - 5.0).abs() < 1e-9);
    assert!((orl - 10.0).abs() < 1e-9);
}

#[test]
fn malformed_matrix_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "ragged.csv", "1,2\n3\n");
    let out = run(&["norm", "--phi", "power:2", "--matrix", &m]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn missing_matrix_file_is_a_usage_error() {
    let out = run(&["norm", "--phi", "power:2", "--matrix", "/nonexistent/m.csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_gauge_spec_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(dir.path(), "m.csv", "1\n");
    let out = run(&["norm", "--phi", "nonsense:7", "--matrix", &m]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = run(&["verify", "--suite", "bogus", "--trials", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("unknown suite"), "stderr: {err}");
}

#[test]
fn degenerate_conjugate_is_reported_not_tabulated() {
    // The conjugate of the linear gauge jumps to infinity past 1; there is
    // no finite table to emit, so the command must refuse cleanly.
    let out = run(&["conjugate", "--phi", "power:1", "--nodes", "32"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn conjugate_csv_round_trips_as_a_gauge_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("psi.csv");
    let out = run(&[
        "--format",
        "csv",
        "--out",
        table.to_str().unwrap(),
        "conjugate",
        "--phi",
        "power:2",
        "--max",
        "8",
        "--nodes",
        "512",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty(), "--out must silence stdout");

    // The emitted table is itself a valid --phi argument.
    let m = write_matrix(dir.path(), "m.csv", "1,0\n0,1\n");
    let spec = format!("grid:{}", table.display());
    let again = run(&["norm", "--phi", &spec, "--matrix", &m]);
    assert_eq!(again.status.code(), Some(0));
}

#[test]
fn verify_csv_has_the_stable_header() {
    let out = run(&[
        "--format",
        "csv",
        "verify",
        "--suite",
        "holder",
        "--trials",
        "4",
        "--dim",
        "2",
        "--budget",
        "200",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.starts_with("suite,check,status,gap,seed"),
        "unexpected header: {text}"
    );
}

#[test]
fn verify_json_parses_back_into_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
        "verify",
        "--suite",
        "dual",
        "--trials",
        "3",
        "--dim",
        "2",
        "--budget",
        "400",
    ]);
    assert_eq!(out.status.code(), Some(0));

    // The written file feeds straight back into the report subcommand.
    let replay = run(&["report", "--input", path.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    assert!(stdout(&replay).contains("summary"));
}

#[test]
fn report_exits_one_on_a_failing_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{
            "suite": "demo",
            "config": {},
            "checks": [
                {"name": "broken_bound", "status": "fail", "gap": -0.25}
            ],
            "summary": {"pass": 0, "fail": 1, "skipped": 0}
        }"#,
    )
    .unwrap();
    let out = run(&["report", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn report_rejects_non_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    fs::write(&path, r#"{"hello": "world"}"#).unwrap();
    let out = run(&["report", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn indices_of_the_quadratic_gauge_are_the_known_point() {
    let out = run(&["--format", "json", "indices", "--phi", "power:2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let alpha = v["alpha"].as_f64().unwrap();
    let beta = v["beta"].as_f64().unwrap();
    let expect = 0.5f64.sqrt();
    assert!((alpha - expect).abs() < 1e-6);
    assert!((beta - expect).abs() < 1e-6);
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let args = [
        "--format",
        "json",
        "verify",
        "--suite",
        "clarkson-sp",
        "--trials",
        "6",
        "--dim",
        "3",
        "--seed",
        "7",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn constants_come_back_with_all_four_bounds() {
    // The interpolation cap only applies when a blend position is given.
    let out = run(&[
        "--format",
        "json",
        "constants",
        "--phi",
        "power:1.5",
        "--s",
        "0.5",
        "--dim",
        "2",
        "--budget",
        "300",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for expected in [
        "j_squared_vs_cnj",
        "j_lower_from_indices",
        "cnj_interpolation_cap",
        "cnj_sandwich",
    ] {
        assert!(names.contains(&expected), "missing {expected} in {names:?}");
    }
}
