//! End-to-end runs of the binary: exit-code contract, report determinism,
//! spec-file diagnostics and the headline table outputs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leafhodge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("leafhodge-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file");
    path
}

#[test]
fn verify_suite_reports_json() {
    let out = run(&["verify", "--suite", "an-fake", "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON report");
    assert_eq!(report["pass"], serde_json::Value::Bool(true));
    let checks = report["checks"].as_array().expect("checks array");
    assert!(!checks.is_empty());
    for check in checks {
        assert_eq!(check["pass"], serde_json::Value::Bool(true));
        assert_eq!(check["residual_terms"], serde_json::json!(0));
        assert!(check["millis"].is_number());
        assert!(check["name"].is_string());
    }
    // Sorted by name.
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let scrub = |raw: &[u8]| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_slice(raw).expect("json");
        if let Some(checks) = v["checks"].as_array_mut() {
            for c in checks {
                c["millis"] = serde_json::json!(0);
            }
        }
        v
    };
    let a = run(&["verify", "--suite", "d1-rewrite", "--trace", "--json"]);
    let b = run(&["verify", "--suite", "d1-rewrite", "--trace", "--json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(scrub(&a.stdout), scrub(&b.stdout));
    // The transcript is present and non-empty.
    let report = scrub(&a.stdout);
    let trace = report["data"]["trace-plus"].as_array().expect("trace");
    assert!(!trace.is_empty());
}

#[test]
fn genus_two_table_output() {
    let out = run(&["table", "--genus", "2", "--coeff", "c:0"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[1,5,4]"), "got: {text}");
    let out2 = run(&["table", "--genus", "2", "--coeff", "an"]);
    assert!(String::from_utf8_lossy(&out2.stdout).contains("[0,4,4]"));
    let out3 = run(&["table", "--genus", "2", "--coeff", "sl2"]);
    assert!(String::from_utf8_lossy(&out3.stdout).contains("[0,10,10]"));
}

#[test]
fn spectrum_file_round_trip() {
    let spectrum = write_temp("spectrum", "2/9 2\n1/4 1\n");
    let out = run(&[
        "table",
        "--genus",
        "3",
        "--coeff",
        "c:1/3*r2",
        "--spectrum",
        spectrum.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[0,2,2]"), "got: {text}");
    assert!(text.contains("no-decomposition"));
    let _ = std::fs::remove_file(spectrum);
}

#[test]
fn bad_spec_file_exits_two_with_position() {
    let bad = write_temp(
        "bad-spec",
        "algebra an\nmodule V dim 1\naction H = matrix[[0]]\naction E = matrix[[1]]\n",
    );
    let out = run(&["cohomology", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "got: {err}");
    let _ = std::fs::remove_file(bad);
}

#[test]
fn cohomology_and_spectral_specs() {
    let coh = write_temp(
        "coh-spec",
        "algebra an\nmodule V dim 1\naction H = matrix[[1/2*r2]]\naction E = matrix[[0]]\n",
    );
    let out = run(&["cohomology", coh.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        report["data"]["cohomology-dims"],
        serde_json::json!([0, 1, 1])
    );
    let _ = std::fs::remove_file(coh);

    let sp = write_temp(
        "spectral-spec",
        "algebra sl2\nsubalgebra H E\nmodule C dim 1\naction E = matrix[[0]]\naction H = matrix[[0]]\naction F = matrix[[0]]\n",
    );
    let out = run(&["spectral", sp.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], serde_json::Value::Bool(true));
    let first = report["data"]["first-sheet"].as_str().unwrap();
    assert!(first.contains("p=0"));
    let _ = std::fs::remove_file(sp);
}

#[test]
fn model_runs_and_unknown_suite_fails() {
    let out = run(&["model", "--rep", "D1+", "--top-weight", "12", "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["data"]["ladder-sign"], serde_json::json!(1));
    assert_eq!(report["data"]["casimir-scalar"], serde_json::json!("0"));

    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["model", "--rep", "D9*", "--top-weight", "15"]);
    assert_eq!(out.status.code(), Some(2));
}
