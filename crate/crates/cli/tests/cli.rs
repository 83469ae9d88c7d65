use std::path::PathBuf;
use std::process::{Command, Output};

fn atheta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atheta")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("atheta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn passing_suite_exits_zero_with_json_report() {
    let out = atheta(&["verify", "ktheory"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["suite"], "ktheory");
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for key in ["check_id", "paper_anchor", "params", "max_error", "tolerance", "pass"] {
        assert!(checks[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn oscillator_index_example() {
    let out = atheta(&["verify", "oscillator", "--lambda", "1", "--L", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let index = report["checks"].as_array().unwrap().iter().find(|c| c["check_id"] == "oscillator.fredholm_index").unwrap();
    assert_eq!(index["pass"], true);
}

#[test]
fn zero_shear_is_a_config_error() {
    let out = atheta(&["verify", "duality", "--b", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn failing_checks_exit_one() {
    let out = atheta(&["verify", "algebra", "--tol-exact", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn rational_theta_is_rejected() {
    assert_eq!(atheta(&["verify", "algebra", "--theta", "0.5"]).status.code(), Some(2));
}

#[test]
fn d_squared_csv_rows() {
    let out = atheta(&["spectrum", "d_squared", "--lambda", "1", "--L", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let values: Vec<f64> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    let want = [0.0, 2.0, 2.0, 4.0, 4.0, 6.0, 6.0, 8.0];
    assert_eq!(values.len(), want.len());
    for (v, w) in values.iter().zip(want) {
        assert!((v - w).abs() < 1e-12);
    }
}

#[test]
fn empty_truncation_is_rejected() {
    assert_eq!(atheta(&["spectrum", "d_lambda", "--L", "0"]).status.code(), Some(2));
}

#[test]
fn config_file_is_read_and_flags_win() {
    let path = scratch("run.toml");
    std::fs::write(&path, "theta = 0.4142135623730951\nb = 3\nseed = 9\n[trunc]\nL = 12\n").unwrap();
    let out = atheta(&["verify", "ktheory", "--config", path.to_str().unwrap(), "--b", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["config"]["b"], 5);
    assert_eq!(report["config"]["seed"], 9);
    assert_eq!(report["config"]["trunc"]["L"], 12);
    assert_eq!(report["config"]["theta"], 0.4142135623730951);
}

#[test]
fn unknown_config_key_is_rejected() {
    let path = scratch("bad.toml");
    std::fs::write(&path, "thta = 0.3\n").unwrap();
    assert_eq!(atheta(&["verify", "ktheory", "--config", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout() {
    let path = scratch("groupoids.json");
    let out = atheta(&["verify", "groupoids", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, atheta(&["verify", "groupoids"]).stdout);
}
