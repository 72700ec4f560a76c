use std::process::{Command, Output};

use serde_json::Value;

fn ccs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccs")).args(args).output().expect("spawn ccs")
}

fn json(args: &[&str]) -> Value {
    let out = ccs(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn casimir_reports_lambda_times_lambda_minus_four() {
    let v = json(&["casimir", "--lambda", "5", "--degree", "2"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["pass"], true);
    assert_eq!(v["summary"]["expected"], 5.0);
    for row in v["rows"].as_array().unwrap() {
        assert!((row["eigenvalue"].as_f64().unwrap() - 5.0).abs() < 1e-10);
    }
}

#[test]
fn fock_verify_finds_odd_exchange_parity() {
    let v = json(&["fock-verify", "--lambda", "3"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["summary"]["exchange_parity"], -1.0);
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(ccs(&["casimir", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(ccs(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn output_is_reproducible() {
    let args = ["ortho-check", "--lambda", "4", "--degree", "1", "--mc-samples", "20000", "--seed", "3"];
    assert_eq!(ccs(&args).stdout, ccs(&args).stdout);
}

#[test]
fn csv_starts_with_header() {
    let out = ccs(&["casimir", "--degree", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("index,eigenvalue,off_diagonal,closed_form"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("ccs-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    let out = ccs(&["kernel-check", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "kernel-check");
    std::fs::remove_dir_all(dir).ok();
}
