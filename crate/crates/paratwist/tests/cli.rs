use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paratwist")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("paratwist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn report(path: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "local", "--target", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "local", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["make-form", "--kind", "eisenstein", "--weight", "5", "--out", "/dev/null"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--input", "x.json", "--point", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["twist", "--form", "chi10", "--window", "81"]).status.code(), Some(2));
}

#[test]
fn passing_commands_exit_with_zero() {
    let out = run(&["verify", "cosets", "--op", "T1", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "verify cosets");
    assert_eq!(v["passed"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS"));
    assert_eq!(run(&["gl2-twist", "--p", "3"]).status.code(), Some(0));
}

#[test]
fn failed_verification_exits_with_one() {
    let path = scratch("chi10_twist.json");
    let out = run(&["twist", "--form", "chi10", "--check", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = report(&path);
    assert_eq!(v["passed"], false);
    assert_eq!(v["result"]["nonzero"], 0);
    assert_eq!(v["result"]["checks"]["lattice_support"]["off_lattice_cancels"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn reports_are_deterministic_apart_from_the_timestamp() {
    let path = scratch("identities.json");
    let mut reports = Vec::new();
    for _ in 0..2 {
        let out = run(&["--seed", "5", "verify", "identities", "--cases", "50", "--oracle-cases", "2", "--report", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        reports.push(report(&path));
    }
    let (mut x, mut y) = (reports[0].clone(), reports[1].clone());
    assert!(x["timestamp"].is_u64());
    x.as_object_mut().unwrap().remove("timestamp");
    y.as_object_mut().unwrap().remove("timestamp");
    assert_eq!(x, y);
    assert_eq!(x["parameters"]["global"]["seed"], 5);
}

#[test]
fn forms_round_trip_through_files() {
    let f = scratch("chi10.json");
    let out = run(&["make-form", "--kind", "lift", "--out", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["eval", "--input", f.to_str().unwrap(), "--point", "0,0,0:0.6,0,0.6"]);
    assert_eq!(out.status.code(), Some(1), "a 12 x 12 window is too small at this precision");
    let out = run(&["eval", "--input", f.to_str().unwrap(), "--point", "0,0,0:1.6,0.2,1.7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let h = scratch("t1.json");
    let out = run(&["hecke", "--op", "T1", "--ell", "2", "--input", f.to_str().unwrap(), "--out", h.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["exact"]["eigenvalue"], "240");
}
