use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const F1: &str = "(x^2*z+1)/((x+y)*(x+z)^2+1)";
const F3: &str = "1/(x-y+z)";

fn trisum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trisum")).args(args).env_remove("TRISUM_MAX_ORDER").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("trisum-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn telescope_json_schema() {
    let o = trisum(&["telescope", F1, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["order"], 2);
    let coeffs = v["telescoper"]["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 3);
    assert_eq!(coeffs[2], "x^4 + 2*x^3 + x^2 + 2*x + 1");
    assert!(v["certificate"]["g"].is_string() && v["certificate"]["h"].is_string());
    assert!(v["stats"]["iterations"].is_u64() && v["stats"]["elapsed_ms"].is_number());
}

#[test]
fn certificate_modes() {
    for mode in ["normalized", "deferred"] {
        let v: Value = serde_json::from_str(&stdout(&trisum(&["telescope", F1, "--json", "--certificate", mode]))).unwrap();
        assert!(v["certificate"].is_object(), "{mode}");
    }
    let v: Value = serde_json::from_str(&stdout(&trisum(&["telescope", F1, "--json", "--certificate", "none"]))).unwrap();
    assert!(v["certificate"].is_null());
    assert_eq!(trisum(&["telescope", F1, "--certificate", "eager"]).status.code(), Some(2));
}

#[test]
fn routes_agree() {
    let direct: Value = serde_json::from_str(&stdout(&trisum(&["telescope", F1, "--json"]))).unwrap();
    for extra in [["--lclm"], ["--no-enhancements"]] {
        let mut args = vec!["telescope", F1, "--json"];
        args.extend(extra);
        let v: Value = serde_json::from_str(&stdout(&trisum(&args))).unwrap();
        assert_eq!(v["telescoper"], direct["telescoper"], "{extra:?}");
    }
}

#[test]
fn summable_and_no_telescoper() {
    let o = trisum(&["telescope", F3, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "summable");
    assert_eq!(v["order"], 0);

    let o = trisum(&["telescope", "1/(x*y+z)", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "no_telescoper");
    assert!(v["certificate"].is_null());

    assert_eq!(trisum(&["summable", F3]).status.code(), Some(0));
    assert_eq!(trisum(&["summable", F1]).status.code(), Some(1));
}

#[test]
fn factored_denominator() {
    let f = "1/((x+y)*(x+y+1)*(x+2*y+3*z))";
    let o = trisum(&["telescope", f, "--factored-den", "(x+y)*(x+y+1)*(x+2*y+3*z)", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = trisum(&["telescope", f, "--factored-den", "(x+y)*(x+2*y+3*z)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors() {
    for args in [vec!["telescope", "2x"], vec!["telescope", "1/0"], vec!["summable", "x+"], vec!["telescope"], vec!["frobnicate"]] {
        assert_eq!(trisum(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reduce_reports_remainder() {
    let o = trisum(&["reduce", F1, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_ne!(v["remainder"], "0");
    assert!(!v["groups"].as_array().unwrap().is_empty());
    let v: Value = serde_json::from_str(&stdout(&trisum(&["reduce", F3, "--json"]))).unwrap();
    assert_eq!(v["remainder"], "0");
}

#[test]
fn verify_operator_files() {
    let out = stdout(&trisum(&["telescope", F1, "--json"]));
    let json = temp_file("op.json", &out);
    assert_eq!(trisum(&["verify", "--operator", json.to_str().unwrap(), F1]).status.code(), Some(0));

    let v: Value = serde_json::from_str(&out).unwrap();
    let lines: Vec<&str> = v["telescoper"]["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    let text = temp_file("op.txt", &lines.join("\n"));
    assert_eq!(trisum(&["verify", "--operator", text.to_str().unwrap(), F1]).status.code(), Some(0));

    let wrong = temp_file("wrong.txt", "1\n-1\n");
    assert_eq!(trisum(&["verify", "--operator", wrong.to_str().unwrap(), F1]).status.code(), Some(1));

    let bad = temp_file("bad.txt", "y\n");
    assert_eq!(trisum(&["verify", "--operator", bad.to_str().unwrap(), F1]).status.code(), Some(2));
    assert_eq!(trisum(&["verify", "--operator", "/nonexistent/op", F1]).status.code(), Some(2));
    for p in [json, text, wrong, bad] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn max_order_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_trisum")).args(["telescope", F1]).env("TRISUM_MAX_ORDER", "1").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bench_runs() {
    let o = trisum(&["bench", "--m", "1", "--n", "1", "--xi", "1", "--zeta", "1", "--variant", "rctlm2", "--seed", "3", "--reps", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["variant"], "rctlm2");
    assert_eq!(v["elapsed_ms"].as_array().unwrap().len(), 2);
    assert!(v["order"].as_u64().unwrap() >= 1);
    assert_eq!(trisum(&["bench", "--m", "1", "--n", "1", "--xi", "0", "--zeta", "1"]).status.code(), Some(2));
    assert_eq!(trisum(&["bench", "--m", "1", "--n", "1", "--xi", "1", "--zeta", "1", "--variant", "rct9"]).status.code(), Some(2));
}
