use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypertrans")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn transform(seq: &str, spec: &str) -> Output {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "seq.json", seq);
    let spec = write(dir.path(), "spec.json", spec);
    run(&["transform", "--in", &input, "--spec", &spec])
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("stdout is JSON")
}

#[test]
fn signed_binomial_of_delta() {
    let out = transform(r#"{"seq": [["1","0"],["0","0"]]}"#, r#"{"kind":"binomial-signed"}"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({"seq": [["1","0"],["1","0"]]}));
}

#[test]
fn identity_spec_is_a_no_op() {
    let seq = r#"{"seq": [["1/2","-3"],["0","7/5"],["-4","0"]]}"#;
    let out = transform(seq, r#"{"kind":"identity"}"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::from_str::<Value>(seq).unwrap());
}

#[test]
fn l_kernel_second_entry() {
    let out = transform(r#"{"seq":[["0","0"],["1","0"]]}"#, r#"{"kind":"L","a":"1"}"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({"seq": [["0","0"],["-2","0"]]}));
}

#[test]
fn inadmissible_parameter_exits_2() {
    let out = transform(r#"{"seq":[["0","0"],["1","0"]]}"#, r#"{"kind":"L","a":"-1"}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_3() {
    let out = transform(r#"{"seq": ["#, r#"{"kind":"identity"}"#);
    assert_eq!(out.status.code(), Some(3));
    let out = transform(r#"{"seq": [["1","0"]]}"#, r#"{"kind":"L","a":"1/0"}"#);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["verify", "--id", "S610", "--trials", "many", "--nmax", "1", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_tag_exits_2() {
    let out = run(&["verify", "--id", "I999", "--trials", "1", "--nmax", "1", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_campaigns_pass() {
    for (id, trials, nmax, seed) in [("roundtrip-L", "200", "16", "7"), ("I5710", "50", "6", "1"), ("S610", "1", "0", "0")] {
        let out = run(&["verify", "--id", id, "--trials", trials, "--nmax", nmax, "--seed", seed]);
        assert_eq!(out.status.code(), Some(0), "{id}: {}", stdout(&out));
        let report = json(&out);
        assert_eq!(report["identity"], id);
        assert_eq!(report["status"], "pass");
    }
}

#[test]
fn reports_persist_and_reproduce() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let args = ["verify", "--id", "dixon", "--trials", "20", "--nmax", "6", "--seed", "42", "--out", out_dir];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let path = dir.path().join("dixon-seed42.json");
    let mut a: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let second = run(&args);
    let mut b: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json(&second)["seed"], 42);
    a.as_object_mut().unwrap().remove("elapsed_ms");
    b.as_object_mut().unwrap().remove("elapsed_ms");
    assert_eq!(a, b);
}

#[test]
fn mutated_selftest_names_the_family() {
    let out = run(&["selftest", "--mutate", "L"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("criterion 1 [inverse roundtrips] failed (roundtrip-L)"), "{}", stdout(&out));
}
