use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freudenthal")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn octonion_product_norm() {
    let v = json(&run(&["oct", "norm", "[1,1,0,0,0,0,0,0]"]));
    assert_eq!(v["norm"], 2);
}

#[test]
fn element_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_freudenthal"))
        .args(["w", "quartic", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"a":1,"b":0,"c":0,"d":1}"#).unwrap();
    let v = json(&child.wait_with_output().unwrap());
    assert_eq!(v["quartic"], 1);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["coeff", "e6", "--height", "4", r#"{"a":0,"b":1,"c":0,"d":-1}"#]);
    let b = run(&["coeff", "e6", "--height", "4", r#"{"a":0,"b":1,"c":0,"d":-1}"#]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["w", "rank", "{broken"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let domain = run(&["arch", "f0", "--n", "3"]);
    assert_eq!(domain.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&domain.stderr).unwrap();
    assert!(e["error"].is_string());
}

#[test]
fn csv_rows() {
    let out = run(&["--format", "csv", "coeff", "sigma", "--k", "4", "--n", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "k,n,sigma\n4,3,82\n");
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = run(&["--cache-dir", d, "enum", "rank1-psd", "--pairing", "I", "--value", "1"]);
    let v = json(&first);
    assert_eq!(v["count"], 3);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = run(&["--cache-dir", d, "enum", "rank1-psd", "--pairing", "I", "--value", "1"]);
    assert_eq!(first.stdout, second.stdout);
    let path = json(&run(&["--cache-dir", d, "cache", "path"]));
    assert!(path.to_string().contains(d));
    assert!(run(&["--cache-dir", d, "cache", "clear"]).status.success());
}

#[test]
fn fast_suite_subset() {
    let out = run(&["suite", "acceptance", "--fast", "--only", "6"]);
    let v = json(&out);
    assert_eq!(v[0]["passed"], true);
}
