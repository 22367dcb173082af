use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn models() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossdecomp")).args(args).output().expect("binary runs")
}

fn model(name: &str) -> String {
    models().join(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_qubit() {
    let out = run(&["analyze", "--model", &model("qubit.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["command"], "analyze");
    assert_eq!(report["data"]["gamma_gens"], serde_json::json!(["2"]));
    assert_eq!(report["data"]["Q_factor"], false);
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let args = ["verify", "--model", &model("doubled.json"), "--seed", "7", "--cases", "30"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(json(&first).get("elapsed_ms").is_none());
}

#[test]
fn timings_are_opt_in() {
    let out = run(&["verify", "--model", &model("qubit.json"), "--suites", "spectral,trace", "--timings"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let elapsed = report["elapsed_ms"].as_object().unwrap();
    assert_eq!(elapsed.keys().collect::<Vec<_>>(), ["spectral", "trace"]);
}

#[test]
fn suite_selection() {
    let out = run(&["verify", "--model", &model("qubit.json"), "--suites", "s-gamma"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["check_id"].as_str().unwrap().starts_with("s-gamma.")));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"algebra": {"blocks": [{"dim": 2, "eigenvalues": ["1/2"]}]}}"#).unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\n  \"algebra\": [\n").unwrap();
    for args in [
        vec!["verify", "--model", bad.to_str().unwrap()],
        vec!["verify", "--model", broken.to_str().unwrap()],
        vec!["verify", "--model", "/nonexistent/model.json"],
        vec!["verify", "--model", &model("qubit.json"), "--suites", "nonsense"],
        vec!["verify", "--model", &model("qubit.json"), "--window", "0"],
        vec!["powers", "1/2", "1/4", "1"],
        vec!["powers", "2", "1"],
        vec!["powers", "1/2", "x"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let out = run(&["verify", "--model", broken.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn powers_two_parameters() {
    let out = run(&["powers", "1/2", "1/3", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["model"], "1/2 1/3 level 1");
    assert_eq!(report["data"]["gamma_rank"], 2);
    assert_eq!(report["passed"], true);
}

#[test]
fn duality_and_induce() {
    let out = run(&["duality", "--model", &model("trivial_z2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["counts"]["fail"], 0);
    let out = run(&["induce", "--model", &model("reduction_z4_z2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["counts"]["skipped"], 0);
    assert!(report["counts"]["pass"].as_u64().unwrap() > 0);
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--model", &model("tracial.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["model"], "tracial qubit");
    assert!(String::from_utf8_lossy(&out.stderr).contains("pass"));
}
