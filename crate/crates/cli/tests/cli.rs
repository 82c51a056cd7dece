use std::path::Path;
use std::process::{Command, Output};

use binedge_core::algebra::{parse_monomial, MonomialIdeal, VarNames};
use binedge_core::symbolic::symbolic_power_monomial;
use serde_json::Value;
use tempfile::TempDir;

fn binedge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binedge")).args(args).env_remove("BINEDGE_WORKERS").output().unwrap()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = binedge(args);
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stdout)));
    (code, report)
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn arg(p: &str) -> &str {
    assert!(Path::new(p).exists());
    p
}

#[test]
fn generate_from_flags_builds_the_graph() {
    let out = binedge(&["generate", "--family", "pendant-cliques", "--path-len", "5", "--join", "v2:K3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["graph"]["n"], 7);
    assert_eq!(doc["graph"]["edges"].as_array().unwrap().len(), 7);
    assert_eq!(doc["recipe"]["vertex_joins"]["2"], serde_json::json!([3]));
}

#[test]
fn generate_rejects_bad_recipes() {
    assert_eq!(binedge(&["generate", "--path-len", "3", "--join", "e1:K4"]).status.code(), Some(2));
    assert_eq!(binedge(&["generate", "--path-len", "3", "--join", "q1:K4"]).status.code(), Some(2));
    assert_eq!(binedge(&["generate", "--fixture", "nope"]).status.code(), Some(2));
}

#[test]
fn generate_fixture_and_sweep() {
    let out = binedge(&["generate", "--fixture", "pendant-cliques"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["graph"]["n"], 12);
    let dot = String::from_utf8(binedge(&["generate", "--fixture", "net", "--dot"]).stdout).unwrap();
    assert!(dot.starts_with("graph G {") && dot.contains("1 -- 2"));
    let out = binedge(&["generate", "--all", "--max-n", "5", "--family", "pendant-cliques"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["count"].as_u64().unwrap() as usize, doc["recipes"].as_array().unwrap().len());
}

#[test]
fn fsplit_on_a_path_passes() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "path5.json", r#"{"path_len": 5}"#);
    let (code, report) = run(&["fsplit", "--recipe", arg(&p), "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["status"], "pass");
    assert!(report["verdicts"].as_array().unwrap().iter().all(|v| v["passed"] == true));
}

#[test]
fn triangle_powers_fail_with_a_replayable_witness() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "triangle.json", r#"{"variables": ["a", "b", "c"], "generators": ["a*b", "b*c", "a*c"]}"#);
    let (code, report) = run(&["powers", "--ideal", arg(&p), "--tmax", "2"]);
    assert_eq!(code, 1);
    let w = &report["witnesses"][0];
    assert_eq!(w["witness"], "a*b*c");
    assert_eq!(w["failing_t"], 2);
    let names = VarNames::Custom(vec!["a".into(), "b".into(), "c".into()]);
    let ideal = MonomialIdeal::new(3, ["a*b", "b*c", "a*c"].iter().map(|s| parse_monomial(s, &names).unwrap()));
    let m = parse_monomial(w["witness"].as_str().unwrap(), &names).unwrap();
    assert!(symbolic_power_monomial(&ideal, 2).unwrap().contains(&m));
    assert!(!ideal.power(2).unwrap().contains(&m));
}

#[test]
fn star_has_no_special_odd_cycle() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "star.json", r#"{"n": 5, "edges": [[1, 2], [1, 3], [1, 4], [1, 5]]}"#);
    let (code, report) = run(&["socp", "--graph", arg(&p)]);
    assert_eq!(code, 0);
    assert!(report["result"]["special_odd_cycle"].is_null());
}

#[test]
fn triangle_ideal_has_a_special_odd_cycle() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "triangle.json", r#"{"variables": ["a", "b", "c"], "generators": ["a*b", "b*c", "a*c"]}"#);
    let (code, report) = run(&["socp", "--ideal", arg(&p)]);
    assert_eq!(code, 1);
    assert_eq!(report["witnesses"][0]["length"], 3);
}

#[test]
fn graph_commands_on_fixtures() {
    let (code, report) = run(&["gbasis", "--fixture", "net"]);
    assert_eq!(code, 0);
    assert!(!report["result"]["basis"].as_array().unwrap().is_empty());
    let (code, report) = run(&["initial", "--fixture", "pendant-cliques"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["squarefree"], true);
    let (code, report) = run(&["primes", "--fixture", "net"]);
    assert_eq!(code, 0);
    assert!(report["result"]["minimal_primes"].as_array().unwrap().len() > 1);
    let (code, _) = run(&["powers", "--fixture", "pendant-cliques", "--tmax", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn routing_between_families() {
    let (code, report) = run(&["sfr", "--fixture", "pendant-cliques"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["certificates"][0]["route"], "pendant-cliques");
    let (code, report) = run(&["sfr", "--fixture", "net"]);
    assert_eq!(code, 2);
    assert_eq!(report["status"], "invalid_input");
    let (code, _) = run(&["fsplit", "--fixture", "generalized-pendant-cliques", "--p", "3"]);
    assert_eq!(code, 0);
}

#[test]
fn exit_codes_for_bad_input_and_budgets() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"n": 3, "edges": [[1, 4]]}"#);
    assert_eq!(run(&["primes", "--graph", arg(&bad)]).0, 2);
    let broken = write(&dir, "broken.json", "{not json");
    assert_eq!(run(&["gbasis", "--graph", arg(&broken)]).0, 2);
    let path = write(&dir, "path5.json", r#"{"path_len": 5}"#);
    assert_eq!(run(&["fsplit", "--recipe", arg(&path), "--p", "4"]).0, 2);
    let (code, report) = run(&["fsplit", "--recipe", arg(&path), "--p", "17"]);
    assert_eq!(code, 3);
    assert_eq!(report["status"], "budget_exhausted");
    assert_eq!(run(&["primes"]).0, 2);
}

#[test]
fn reports_are_byte_stable_across_worker_counts() {
    let args = ["fsplit", "--all", "--max-n", "6", "--p", "2", "--p", "3"];
    let a = binedge(&args).stdout;
    let b = Command::new(env!("CARGO_BIN_EXE_binedge")).args(args).env("BINEDGE_WORKERS", "1").output().unwrap().stdout;
    let c = Command::new(env!("CARGO_BIN_EXE_binedge")).args(args).env("BINEDGE_WORKERS", "3").output().unwrap().stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);
    let report: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["status"], "pass");
    assert!(report.get("timing").is_none());
}

#[test]
fn timing_is_opt_in() {
    let (_, report) = run(&["primes", "--fixture", "net", "--timing"]);
    assert!(report["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn sweeps_pass() {
    assert_eq!(run(&["powers", "--all", "--max-n", "6", "--tmax", "2"]).0, 0);
    assert_eq!(run(&["sfr", "--all", "--max-n", "6"]).0, 0);
}

#[test]
fn bad_worker_count_is_invalid_input() {
    let out = Command::new(env!("CARGO_BIN_EXE_binedge")).args(["primes", "--fixture", "net"]).env("BINEDGE_WORKERS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
