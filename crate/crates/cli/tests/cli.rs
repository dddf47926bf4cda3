use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn xlorentz(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_xlorentz"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn run_job(job: &Value) -> (i32, Value) {
    let out = xlorentz(&["--json-indent", "0"], &job.to_string());
    let value = serde_json::from_slice(&out.stdout).expect("output is JSON");
    (out.status.code().unwrap(), value)
}

fn floats(v: &Value) -> Vec<f64> {
    match v {
        Value::Array(items) => items.iter().flat_map(floats).collect(),
        Value::Number(n) => vec![n.as_f64().unwrap()],
        _ => panic!("not numeric: {v}"),
    }
}

#[test]
fn compose_of_identities_is_identity() {
    let (code, out) = run_job(&json!({"command": "compose", "inputs": {"p2": "identity", "p1": "identity"}}));
    assert_eq!(code, 0);
    assert!(floats(&out["params"]["omega"]).iter().all(|&x| x == 0.0));
    assert!(floats(&out["params"]["theta"]).iter().all(|&x| x == 0.0));
}

#[test]
fn oplus_of_quarter_turn_has_rotation_block() {
    let q = std::f64::consts::FRAC_PI_2;
    let (code, out) = run_job(&json!({"command": "oplus", "inputs": {"params": {"theta": [0.0, 0.0, q]}}}));
    assert_eq!(code, 0);
    let m = &out["matrix"];
    let expected = [[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
    for i in 0..3 {
        for j in 0..3 {
            assert!((m[i][j].as_f64().unwrap() - expected[i][j]).abs() < 1e-15);
        }
    }
}

#[test]
fn exp_then_factorize_recovers_parameters() {
    let params = json!({"omega": [0.3, -0.2, 0.5, 0.1], "u": [0.4, 0.0, -0.3], "theta": [0.2, 0.7, -0.1]});
    let (code, exp) = run_job(&json!({"command": "exp", "inputs": {"params": params}}));
    assert_eq!(code, 0);
    let (code, fact) = run_job(&json!({"command": "factorize", "inputs": {"matrix": exp["matrix"]}}));
    assert_eq!(code, 0);
    for part in ["omega", "u", "theta"] {
        for (a, b) in floats(&fact["params"][part]).iter().zip(floats(&params[part])) {
            assert!((a - b).abs() < 1e-9, "{part}: {a} vs {b}");
        }
    }
}

#[test]
fn files_in_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("job.json");
    let output = dir.path().join("result.json");
    std::fs::write(&input, r#"{"command": "inverse", "inputs": {"params": {"u": [1, 0, 0]}}}"#).unwrap();
    let out = xlorentz(&["--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()], "");
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let result: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(floats(&result["params"]["u"]), vec![-1.0, 0.0, 0.0]);
}

#[test]
fn numbers_carry_seventeen_significant_digits() {
    let out = xlorentz(&["--json-indent", "0"], r#"{"command": "inverse", "inputs": {"params": {"theta": [0.1, 0, 0]}}}"#);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("-1.0000000000000001e-1"), "{text}");
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(xlorentz(&[], "{not json").status.code(), Some(2));
    assert_eq!(xlorentz(&[], r#"{"command": "teleport"}"#).status.code(), Some(2));
    assert_eq!(xlorentz(&[], r#"{"command": "exp", "inputs": {}}"#).status.code(), Some(2));
    let outside = r#"{"command": "compose", "inputs": {"p2": {"omega": [3.141592653589793, 0, 0, 0]}, "p1": {"omega": [0, 1, 0, 0]}}}"#;
    let out = xlorentz(&[], outside);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["error"]["kind"], "solver");
}

#[test]
fn unattainable_tolerance_fails_verification() {
    let out = xlorentz(&["verify", "--samples", "1", "--tol-override", "all=1e-30"], "");
    assert_eq!(out.status.code(), Some(4));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["report"]["pass"], false);
}

#[test]
fn single_draw_verify_is_deterministic() {
    let a = xlorentz(&["verify", "--samples", "1", "--seed", "7"], "");
    let b = xlorentz(&["verify", "--samples", "1", "--seed", "7"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["seed"], 7);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn constants_report_so3_sector() {
    let out = xlorentz(&["constants"], "");
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entry = v["nonzero"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["r"] == "J1" && e["s"] == "J2" && e["m"] == "J3")
        .unwrap();
    assert_eq!(entry["value"].as_f64(), Some(-1.0));
}

#[test]
fn gauge_of_constant_field_vanishes() {
    let field: Vec<Value> = (0..9).map(|_| json!({"u": [0.3, 0.1, 0.0], "theta": [0.0, 0.4, 0.0]})).collect();
    let job = json!({"command": "gauge", "inputs": {"dims": [3, 3, 1, 1], "spacing": [0.1, 0.1, 1.0, 1.0], "field": field}});
    let (code, out) = run_job(&job);
    assert_eq!(code, 0);
    let sites = out["sites"].as_array().unwrap();
    assert_eq!(sites.len(), 9);
    let computed: Vec<&Value> = sites.iter().filter(|s| s["status"] == "computed").collect();
    assert_eq!(computed.len(), 1);
    assert_eq!(computed[0]["site"], json!([1, 1, 0, 0]));
    assert!(floats(&computed[0]["a"]).iter().all(|&x| x == 0.0));
}
