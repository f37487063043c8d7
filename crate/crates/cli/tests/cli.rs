use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_adapted-basis"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

const EXAMPLE: &[&str] = &["--p", "3", "--n", "1,1,2,1,1", "--g0", "0"];

fn with(cmd: &str, extra: &[&str]) -> Vec<String> {
    std::iter::once(cmd)
        .chain(EXAMPLE.iter().copied())
        .chain(extra.iter().copied())
        .map(String::from)
        .collect()
}

fn run_owned(args: &[String]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn intersection_json_is_the_worked_example() {
    let v = json(&run_owned(&with("intersection", &["--format", "json"])));
    let rows: Vec<Vec<i64>> = serde_json::from_value(v["rows"].clone()).unwrap();
    assert_eq!(
        rows,
        vec![
            vec![0, 1, 1, 0, 1, -1],
            vec![-1, 0, -1, 1, 0, 1],
            vec![-1, 1, 0, 1, 1, -1],
            vec![0, -1, -1, 0, 0, 1],
            vec![-1, 0, -1, 0, 0, 0],
            vec![1, -1, 1, -1, 0, 0],
        ]
    );
    assert_eq!(v["labels"][1], "h^1(X_{1,3})");
}

#[test]
fn verify_exit_codes() {
    assert!(run(&["verify", "--p", "2", "--n", "1,1,1,1,1,1", "--g0", "0"]).status.success());
    // four fixed points of an involution on a quotient sphere give genus 1
    assert_eq!(run(&["verify", "--p", "2", "--n", "1,1,1,1", "--g0", "0"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--p", "4", "--n", "1,3", "--g0", "1"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--p", "3", "--n", "1,1", "--g0", "1"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--p", "3", "--n", "1,3", "--g0", "1"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--p", "5", "--t", "0", "--g0", "1"]).status.code(), Some(1));
    assert!(run(&["verify", "--p", "5", "--t", "0", "--g0", "2"]).status.success());
}

#[test]
fn argument_errors_exit_1() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["basis", "--p", "3"]).status.code(), Some(1));
    assert_eq!(run(&["basis", "--p", "3", "--n", "1,x", "--g0", "0"]).status.code(), Some(1));
    assert_eq!(
        run(&["basis", "--p", "3", "--n", "1,2", "--m", "1,1", "--g0", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(run_stdin(&["basis"], "{not json").status.code(), Some(1));
    assert_eq!(run_stdin(&["basis"], r#"{"p": 3, "n": [1, 2], "g0": 1, "x": 1}"#).status.code(), Some(1));
    assert_eq!(run(&["basis", "--input", "/nonexistent/class.json"]).status.code(), Some(1));
    assert!(run(&["--help"]).status.success());
}

#[test]
fn fixed_point_free_basis_labels() {
    let v = json(&run(&["basis", "--p", "5", "--t", "0", "--g0", "2", "--format", "json"]));
    assert_eq!(v["labels"].as_array().unwrap().len(), 12);
    assert_eq!(v["labels"][10], "alpha");
}

#[test]
fn multiplicity_input() {
    let a = json(&run(&["matrix", "--p", "3", "--m", "4,1", "--g0", "0", "--format", "json"]));
    let b = json(&run_owned(&with("matrix", &["--format", "json"])));
    assert_eq!(a["rows"], b["rows"]);
}

#[test]
fn basis_reports_original_fixed_points() {
    let v = json(&run_owned(&with("basis", &["--format", "json"])));
    // x_3 carries the only datum 2
    assert_eq!(v["labels"][4], "h^0(X_{2,1})");
    assert_eq!(v["fixed_point"][4], 3);
}

#[test]
fn rewrite_outputs() {
    let v = json(&run_owned(&with("rewrite", &["--format", "json"])));
    assert_eq!(v["generators"].as_array().unwrap().len(), 6);
    assert_eq!(v["relator"][0], serde_json::json!(["h^1(X_3)", 1]));
    assert_eq!(v["relator"][11], serde_json::json!(["h^1(X_5)", -1]));
    let text = String::from_utf8(run_owned(&with("presentation", &[])).stdout).unwrap();
    assert!(text.contains("relator: h^1(X_3) h^1(X_4)"));
    let csv = String::from_utf8(run_owned(&with("rewrite", &["--format", "csv"])).stdout).unwrap();
    assert!(csv.starts_with("symbol,sign\n"));
}

#[test]
fn csv_matrix_has_label_header() {
    let out = run_owned(&with("intersection", &["--format", "csv"]));
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(out.stdout.as_slice());
    let rows: Vec<Vec<String>> = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    // labels contain commas, so they come out quoted
    assert_eq!(
        rows[0],
        ["", "h^0(X_{1,3})", "h^1(X_{1,3})", "h^0(X_{1,4})", "h^1(X_{1,4})", "h^0(X_{2,1})", "h^1(X_{2,1})"]
    );
    assert_eq!(rows[1], ["h^0(X_{1,3})", "0", "1", "1", "0", "1", "-1"]);
    assert_eq!(rows.len(), 7);
}

#[test]
fn symplectify_verifies() {
    let out = run_owned(&with("symplectify", &["--verify", "--format", "json", "--arrangement", "split"]));
    let v = json(&out);
    let j: Vec<Vec<i64>> = serde_json::from_value(v["J"].clone()).unwrap();
    assert_eq!(j[0], vec![0, 0, 0, 1, 0, 0]);
    assert_eq!(v["arrangement"], "split");
    assert!(run(&["symplectify", "--p", "7", "--n", "1,2,4", "--g0", "1", "--verify"]).status.success());
}

#[test]
fn json_round_trips() {
    for cmd in ["rewrite", "basis", "matrix", "intersection", "symplectify", "verify"] {
        for class in [EXAMPLE, &["--p", "5", "--t", "0", "--g0", "2"], &["--p", "5", "--m", "2,0,1,0", "--g0", "1"]] {
            let args: Vec<&str> = std::iter::once(cmd).chain(class.iter().copied()).chain(["--format", "json"]).collect();
            let first = run(&args);
            let v = json(&first);
            let class_json = v["class"].to_string();
            let again = run_stdin(&[cmd, "--input", "-", "--format", "json"], &class_json);
            assert_eq!(first.stdout, again.stdout, "{cmd}");
            let third = run_stdin(&[cmd, "--format", "json"], &class_json);
            assert_eq!(first.stdout, third.stdout, "{cmd}");
        }
    }
}

#[test]
fn sweeps() {
    let out = run(&["sweep", "--p-max", "3", "--t-max", "4", "--g0-max", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("failed: 0"));

    let v = json(&run(&["sweep", "--p-max", "2", "--t-max", "2", "--g0-max", "1", "--format", "json"]));
    let cases = v["cases"].as_array().unwrap();
    assert!(cases.iter().any(|c| c["p"] == 2 && c["n"] == serde_json::json!([1, 1])));

    let out = run(&["sweep", "--p-max", "1", "--t-max", "0", "--g0-max", "0"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("classes: 0"));
}
