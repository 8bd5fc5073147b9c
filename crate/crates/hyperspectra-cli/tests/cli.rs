//! End-to-end runs of the installed binary: exit codes, report schema,
//! determinism, and the documented workflows.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_hyperspectra");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("HYPERSPECTRA_BUDGET")
        .env_remove("HYPERSPECTRA_JOBS")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert!(
        !out.stdout.is_empty(),
        "no stdout; stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn write_edge_r3(dir: &Path) -> String {
    let path = dir.join("edge.hg");
    std::fs::write(&path, "3 3\n1 2 3\n").unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn gen_then_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let hg = dir.path().join("k4r3.hg");
    let out = run(&[
        "gen", "--kind", "complete", "--n", "4", "--r", "3", "-o",
        hg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // the artifact is canonical text, not a report
    let text = std::fs::read_to_string(&hg).unwrap();
    assert!(text.starts_with("4 3\n"), "got {text:?}");

    let out = run(&["invariants", hg.to_str().unwrap()]);
    assert!(out.status.success());
    let rep = report(&out);
    assert_eq!(rep["results"]["m"], 4);
    assert_eq!(rep["results"]["zagreb"], "36");
    assert_eq!(rep["results"]["simplices"], 1);
    assert_eq!(rep["command"], "invariants");
    assert_eq!(rep["tool"], "hyperspectra");
}

#[test]
fn trace_both_methods_agree() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write_edge_r3(dir.path());
    let out = run(&["trace", &hg, "--kind", "Q", "--order", "3", "--method", "both"]);
    assert!(out.status.success());
    let rep = report(&out);
    assert_eq!(rep["results"]["closed"], "21/1");
    assert_eq!(rep["results"]["general"], "21/1");
    assert_eq!(rep["results"]["match"], true);
    assert_eq!(rep["results"]["value"], "21/1");
}

#[test]
fn closed_method_without_closed_form_fails() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write_edge_r3(dir.path());
    let out = run(&["trace", &hg, "--kind", "D", "--order", "2", "--method", "closed"]);
    assert_eq!(out.status.code(), Some(1));
    let rep = report(&out);
    assert!(rep["results"]["error"].is_string());
}

#[test]
fn auto_method_falls_back_to_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write_edge_r3(dir.path());
    let out = run(&["trace", &hg, "--kind", "D", "--order", "2"]);
    assert!(out.status.success());
    let rep = report(&out);
    assert_eq!(rep["results"]["method_used"], "general");
    assert!(rep["results"]["closed_unavailable"].is_string());
    assert_eq!(rep["results"]["value"], "12/1");
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write_edge_r3(dir.path());
    let mut first = report(&run(&["invariants", &hg]));
    let mut second = report(&run(&["invariants", &hg]));
    // only the wall-clock field may differ
    first["timing_ms"] = 0.into();
    second["timing_ms"] = 0.into();
    assert_eq!(first, second);
}

#[test]
fn csv_rows_carry_the_same_values() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write_edge_r3(dir.path());
    let json = report(&run(&["invariants", &hg]));
    let out = run(&["--format", "csv", "invariants", &hg]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("path,value\n"));
    // cells hold the JSON encoding of the leaf, csv-escaped: the string
    // leaf "3" becomes the cell """3"""
    let zagreb = json["results"]["zagreb"].as_str().unwrap();
    let row = csv
        .lines()
        .find(|l| l.starts_with("results.zagreb,"))
        .expect("zagreb row");
    let cell = row.splitn(2, ',').nth(1).unwrap();
    let unescaped = if cell.len() >= 2 && cell.starts_with('"') && cell.ends_with('"') {
        cell[1..cell.len() - 1].replace("\"\"", "\"")
    } else {
        cell.to_owned()
    };
    let leaf: Value = serde_json::from_str(&unescaped).unwrap();
    assert_eq!(leaf.as_str().unwrap(), zagreb);
    let m_row = csv
        .lines()
        .find(|l| l.starts_with("results.m,"))
        .expect("edge count row");
    assert_eq!(m_row, format!("results.m,{}", json["results"]["m"]));
}

#[test]
fn usage_error_and_help_exit_codes() {
    let out = run(&["trace"]);
    assert_eq!(out.status.code(), Some(1), "missing args is a usage error");
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oracle_accepts_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write_edge_r3(dir.path());
    let out = run(&["oracle", &hg]);
    assert!(out.status.success());
    let rep = report(&out);
    assert_eq!(rep["results"]["ok"], true);
    assert_eq!(rep["results"]["errors"], Value::Array(vec![]));
    let checks = rep["results"]["trace_checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["match"] == true));
}

#[test]
fn bounds_report_on_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let hg = dir.path().join("k3.hg");
    std::fs::write(&hg, "3 2\n1 2\n1 3\n2 3\n").unwrap();
    let out = run(&["bounds", hg.to_str().unwrap()]);
    assert!(out.status.success(), "bounds should all hold on the triangle");
    let rep = report(&out);
    let entries = rep["results"].as_array().unwrap();
    let thm43 = entries
        .iter()
        .find(|e| e["bound_id"] == "thm43")
        .expect("graph-only bound present");
    assert_eq!(thm43["satisfied"], "proven");
    assert_eq!(thm43["rhs"]["value"], "5/1");
}

#[test]
fn suite_sweep_is_clean() {
    let out = run(&["suite", "--graphs", "5", "--graphs-only"]);
    assert!(out.status.success());
    let rep = report(&out);
    assert_eq!(rep["results"]["violated"], 0);
    assert_eq!(rep["results"]["inconclusive"], 0);
    assert_eq!(rep["results"]["instances"], 9); // 4 corpus graphs + 5 random
    assert_eq!(rep["results"]["violations"], Value::Array(vec![]));
}

#[test]
fn budget_env_var_aborts_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write_edge_r3(dir.path());
    let out = Command::new(BIN)
        .args(["trace", &hg, "--kind", "Q", "--order", "4", "--method", "general"])
        .env("HYPERSPECTRA_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let rep = report(&out);
    let msg = rep["results"]["error"].as_str().unwrap();
    assert!(msg.contains("budget"), "got {msg}");
}

#[test]
fn generation_is_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.hg");
    let b = dir.path().join("b.hg");
    for p in [&a, &b] {
        let out = run(&[
            "gen", "--kind", "random", "--n", "6", "--r", "3", "--m", "4",
            "--seed", "9", "-o", p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn estrada_interval_certifies_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write_edge_r3(dir.path());
    let out = run(&["--K", "12", "estrada", &hg]);
    assert!(out.status.success());
    let rep = report(&out);
    let slee = &rep["results"]["slee"];
    assert_eq!(slee["certified"], true);
    let lo = slee["lower"].as_f64().unwrap();
    let hi = slee["upper"].as_f64().unwrap();
    assert!(lo <= hi);
    assert!(lo > 35.5 && hi < 40.0, "interval [{lo}, {hi}]");
}
