use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_klts");

fn klts(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn klts")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn default_verify_passes() {
    let out = klts(&["verify", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["overall"], "pass");
    assert_eq!(report["failed"], 0);
}

#[test]
fn impossible_tolerance_is_a_property_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"seed": 42, "tolerances": {"push_pull_round_trip": 1e-16}}"#);
    let out = klts(&["verify", "--config", arg(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rec = report["records"].as_array().unwrap().iter().find(|r| r["name"] == "push_pull_round_trip").unwrap();
    assert_eq!(rec["pass"], false);
    assert!(rec["max_error"].as_f64().unwrap() > 1e-16);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL push_pull_round_trip"));
}

#[test]
fn malformed_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "{\"seed\": 42,");
    let out = klts(&["verify", "--config", arg(&cfg)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_config_key_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"seed": 42, "numerics": {"stencil": 1e-3}}"#);
    assert_eq!(klts(&["verify", "--config", arg(&cfg)]).status.code(), Some(2));
}

#[test]
fn unknown_scenario_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = klts(&["scenario", "run", "no-such-thing", "--out", arg(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sphere-curvature"));
}

#[test]
fn bad_usage_exits_two() {
    assert_eq!(klts(&["verify", "--seed", "minus-one"]).status.code(), Some(2));
}

#[test]
fn scenarios_write_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let list = klts(&["scenario", "list"]);
    let names: Vec<String> = String::from_utf8(list.stdout).unwrap().lines().map(String::from).collect();
    assert_eq!(names.len(), 5);
    for name in &names {
        let out = klts(&["scenario", "run", name, "--seed", "42", "--out", arg(dir.path())]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let summary: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join(format!("{name}.json"))).unwrap()).unwrap();
        assert_eq!(summary["pass"], true);
        let csv = std::fs::read_to_string(dir.path().join(format!("{name}.csv"))).unwrap();
        assert_eq!(csv.lines().count(), summary["rows"].as_u64().unwrap() as usize + 1);
    }
}

#[test]
fn table_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"seed": 9, "table": {"random_states": 4}}"#);
    let run = |file: &str| {
        let path = dir.path().join(file);
        let out = klts(&["table", "--config", arg(&cfg), "--out", arg(&path)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(path).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    assert!(String::from_utf8(a).unwrap().starts_with("state,source,c_11"));
}

#[test]
fn report_file_matches_stdout_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let file = klts(&["verify", "--seed", "3", "--json", arg(&path)]);
    assert!(file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), klts(&["verify", "--seed", "3"]).stdout);
}
