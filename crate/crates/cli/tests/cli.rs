use std::process::{Command, Output};

use serde_json::Value;

fn cnalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cnalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn bratteli_csv_level_two() {
    let o = cnalg(&["bratteli", "--N", "5", "--depth", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for row in ["2,\"∅\",2", "2,\"[1]\",2", "2,\"[2]\",1", "2,\"[1,1]\",1"] {
        assert!(out.contains(row), "{row} missing from\n{out}");
    }
}

#[test]
fn bratteli_n3_multiplicity_five() {
    let o = cnalg(&["bratteli", "--N", "3", "--depth", "3", "--format", "csv"]);
    assert!(stdout(&o).contains("3,\"[1]\",5"));
}

#[test]
fn bratteli_dot_records_seed() {
    let o = cnalg(&["bratteli", "--N", "3", "--depth", "1", "--seed", "9"]);
    let out = stdout(&o);
    assert!(out.starts_with("// seed 9\n"));
    assert!(out.contains("digraph"));
}

#[test]
fn even_n_is_usage_error() {
    let o = cnalg(&["bratteli", "--N", "4", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("N must be odd"));
}

#[test]
fn dims_table() {
    let o = cnalg(&["dims", "--n-max", "4", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let dims: Vec<u64> = v["dims"].as_array().unwrap().iter().map(|d| d["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![2, 10, 76, 764]);
    assert_eq!(v["h"], serde_json::json!([1, 1, 2, 4, 10]));
    assert_eq!(v["dims"][2]["by_r"], serde_json::json!([6, 18, 36, 16]));
    assert_eq!(v["seed"], 0);
}

#[test]
fn dims_budget() {
    assert_eq!(cnalg(&["dims", "--n-max", "9"]).status.code(), Some(2));
}

#[test]
fn trace_values() {
    let o = cnalg(&["trace", "--expr", "e(2)", "--N", "5", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let got = cnalg::exact::parse_scalar(stdout(&o).trim()).unwrap();
    assert_eq!(got, cnalg::exact::parse_scalar("1/[5]^2").unwrap());
    let o = cnalg(&["trace", "--expr", "u1", "--N", "3", "--n", "2"]);
    let got = cnalg::exact::parse_scalar(stdout(&o).trim()).unwrap();
    assert_eq!(got, cnalg::exact::parse_scalar("[2]/[3]").unwrap());
}

#[test]
fn trace_undefined_symbol() {
    let o = cnalg(&["trace", "--expr", "g1*x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_relations_passes() {
    let o = cnalg(&["verify", "--suite", "relations", "--variant", "plus", "--N", "5", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "relations");
    assert_eq!(v["seed"], 0);
}

#[test]
fn verify_basis_degenerate_and_deterministic() {
    let args = ["verify", "--suite", "basis", "--N", "3", "--n", "2", "--strategy", "modular", "--seed", "5"];
    let a = cnalg(&args);
    let b = cnalg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 5);
    for c in v["certificates"].as_array().unwrap() {
        assert_eq!(c["rank"], 9);
        assert_eq!(c["certified"], false);
    }
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(cnalg(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    let out = dir.path().join("report.json");
    std::fs::write(&cfg, "# classical run\nsuite = classical\nN = 3\nn = 2\nseed = 11\n").unwrap();
    let o = cnalg(&["--config", cfg.to_str().unwrap(), "verify", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["suite"], "classical");
    assert_eq!(v["seed"], 11);
    let rank = v["claims"].as_array().unwrap().iter().find(|c| c["id"] == "closure-rank").unwrap();
    assert_eq!(rank["detail"].as_str().unwrap().split(',').next(), Some("rank 9"));
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "N = 4\n").unwrap();
    let o = cnalg(&["--config", cfg.to_str().unwrap(), "bratteli", "--N", "3", "--depth", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn failing_suite_exits_one() {
    let o = cnalg(&["verify", "--suite", "relations", "--N", "3", "--n", "2", "--fault", "beta", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    let line = stdout(&o).lines().find(|l| l.starts_with("FAIL")).unwrap().to_string();
    assert!(line.starts_with("FAIL relations/relation-b:") && line.contains("entry ("), "{line}");
}

#[test]
fn symbolic_budget_is_usage_error() {
    let o = cnalg(&["verify", "--suite", "basis", "--N", "3", "--n", "3", "--strategy", "symbolic"]);
    assert_eq!(o.status.code(), Some(2));
}
