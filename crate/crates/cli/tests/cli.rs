//! End-to-end runs of the `diffalg` binary. Every line it prints is checked
//! against the published schema.

use std::io::Write;
use std::process::{Command, Output};
use std::sync::OnceLock;

use jsonschema::JSONSchema;
use serde_json::Value;
use tempfile::NamedTempFile;

fn schema() -> &'static JSONSchema {
    static SCHEMA: OnceLock<JSONSchema> = OnceLock::new();
    SCHEMA.get_or_init(|| {
        let text = include_str!("../schema/verdict_report.schema.json");
        let value: Value = serde_json::from_str(text).expect("schema is JSON");
        JSONSchema::compile(&value).expect("schema compiles")
    })
}

fn assert_valid(v: &Value) {
    if let Err(errs) = schema().validate(v) {
        let msgs: Vec<String> = errs.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{v} violates the schema: {msgs:?}");
    }
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (Vec<Value>, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_diffalg"));
    cmd.args(args).env_remove("DIFFALG_DEGREE_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, .. } = cmd.output().expect("binary runs");
    let text = String::from_utf8(stdout).expect("utf-8 output");
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).expect("JSON line")).collect();
    lines.iter().for_each(assert_valid);
    (lines, status.code().expect("exit code"))
}

fn run(args: &[&str]) -> (Value, i32) {
    let (mut lines, code) = run_env(args, &[]);
    assert_eq!(lines.len(), 1, "{args:?}");
    (lines.remove(0), code)
}

fn verdict(args: &[&str]) -> String {
    let (v, code) = run(args);
    assert_eq!(code, 0, "{args:?}: {v}");
    v["verdict"].as_str().expect("verdict").to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(verdict(&["da-hypergeom", "--case", "shift", "--b", "x"]), "DIFFERENTIALLY_TRANSCENDENTAL");
    assert_eq!(verdict(&["classify-group", "--case", "q", "--q", "2", "--f", "1/(x-1)"]), "FULL_GA");
    let (v, code) = run(&["integrability", "--case", "shift", "--matrix", "[[0,-1],[1,x]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "NOT_CONSTANT_CONJUGATE");
    assert_eq!(v["certificate"]["scalar_trace"].as_array().unwrap().len(), 4);
}

#[test]
fn positive_verdicts_carry_verified_certificates() {
    let (v, _) = run(&["da-hypergeom", "--b", "3*(x+1)/x"]);
    assert_eq!(v["verdict"], "DIFFERENTIALLY_ALGEBRAIC");
    assert_eq!(v["substitution_verified"], true);
    assert_eq!(v["certificate"]["f"], "x");

    let (v, _) = run(&["classify-group", "--case", "q", "--q", "2", "--f", "2*x-x+1"]);
    assert_eq!(v["verdict"], "CONSTANTS_GA");
    assert_eq!(v["certificate"]["h"], "x");
    assert_eq!(v["certificate"]["c"], "1");

    let (v, _) = run(&["solve-first-order", "--a", "1", "--rhs", "1/(x*(x+1))"]);
    assert_eq!(v["verdict"], "SOLVED");
    assert_eq!(v["certificate"]["particular"]["y"], "-1/x");

    let (v, _) = run(&["telescope", "--a", "1/x", "--a", "-1/x^2", "--order-bound", "1"]);
    assert_eq!(v["verdict"], "TELESCOPER_FOUND");
    assert_eq!(v["substitution_verified"], true);

    let (v, _) = run(&["da-inhomog", "--a", "2", "--b", "1"]);
    assert_eq!(v["verdict"], "DIFFERENTIALLY_ALGEBRAIC");
    assert_eq!(v["certificate"]["f"], "-1");

    let (v, _) = run(&["integrability", "--matrix", "[[2,0],[0,3]]"]);
    assert_eq!(v["verdict"], "CONSTANT_CONJUGATE");
    assert_eq!(v["substitution_verified"], true);
}

#[test]
fn every_subcommand_produces_a_schema_valid_report() {
    let cases: &[&[&str]] = &[
        &["disp", "--f", "1/(x*(x+3))"],
        &["standard-form", "--f", "1/x - 1/(x+2)"],
        &["standard-form", "--case", "q", "--q", "1/4", "--f", "1/(x-1)", "--a", "-2"],
        &["mult-form", "--f", "(x+2)/x"],
        &["solve-scalar", "--coeffs", "[-x, 1]", "--rhs", "1"],
        &["solve-scalar", "--coeffs", "[-1, 1]", "--rhs", "1/x", "--rhs", "1", "--free"],
        &["solve-system", "--matrix", "[[1,0],[0,1]]", "--rhs", "[1,0]"],
        &["telescope", "--a", "x", "--a", "x", "--mult", "--order-bound", "0"],
        &["telescope", "--a", "1/x", "--order-bound", "2"],
        &["da-inhomog", "--a", "x", "--b", "1-x"],
        &["integrability", "--case", "q", "--q", "1/4", "--companion", "[16*(x-1)/(4*x-1), -4*(x-2)/(x-4), 1]"],
        &["classify-group", "--f", "1"],
    ];
    for args in cases {
        let (_, code) = run(args);
        assert_eq!(code, 0, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let (v, code) = run(&["da-hypergeom", "--b", "2x"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "parse_error");
    assert!(v["error"]["message"].as_str().unwrap().contains("column 2"));

    let (v, code) = run(&["da-hypergeom", "--case", "q", "--q", "-1", "--b", "x"]);
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("|q| != 1"));

    let (_, code) = run(&["da-hypergeom", "--case", "q", "--b", "x"]);
    assert_eq!(code, 1);
    let (_, code) = run(&["no-such-command"]);
    assert_eq!(code, 1);
    let (_, code) = run(&["integrability", "--matrix", "[[1,1],[1,1]]"]);
    assert_eq!(code, 1);

    let (v, code) = run(&["solve-scalar", "--coeffs", "[-1,1]", "--rhs", "x^5", "--degree-cap", "0"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "bound_exceeded");
}

#[test]
fn degree_cap_comes_from_the_environment() {
    let args = ["solve-scalar", "--coeffs", "[-1,1]", "--rhs", "x^5"];
    let (lines, code) = run_env(&args, &[("DIFFALG_DEGREE_CAP", "3")]);
    assert_eq!(code, 2, "{lines:?}");
    let (_, code) = run_env(&args, &[("DIFFALG_DEGREE_CAP", "10")]);
    assert_eq!(code, 0);
}

fn batch_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().expect("temp file");
    f.write_all(text.as_bytes()).expect("write temp file");
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().expect("utf-8 path")
}

const EXAMPLES: &str = r#"{"subcommand":"da-hypergeom","case":"shift","b":"x"}
{"subcommand":"classify-group","case":"q","q":"2","f":"1/(x-1)"}
{"subcommand":"integrability","case":"shift","matrix":"[[0,-1],[1,x]]"}
"#;

#[test]
fn batch_reproduces_single_queries() {
    let f = batch_file(EXAMPLES);
    let (lines, code) = run_env(&["batch", path(&f)], &[]);
    assert_eq!(code, 0);
    let verdicts: Vec<&str> = lines.iter().map(|v| v["verdict"].as_str().unwrap()).collect();
    assert_eq!(verdicts, ["DIFFERENTIALLY_TRANSCENDENTAL", "FULL_GA", "NOT_CONSTANT_CONJUGATE"]);
}

#[test]
fn batch_of_empty_file_prints_nothing() {
    let f = batch_file("");
    let (lines, code) = run_env(&["batch", path(&f)], &[]);
    assert!(lines.is_empty());
    assert_eq!(code, 0);
}

#[test]
fn batch_isolates_malformed_lines() {
    let text = EXAMPLES.replacen("\n", "\n{\"subcommand\":\"disp\",\"f\":\"1/(x\"}\n", 1);
    let f = batch_file(&text);
    let (lines, code) = run_env(&["batch", path(&f)], &[]);
    assert_eq!(lines.len(), 4);
    assert_eq!(code, 1);
    assert_eq!(lines[0]["verdict"], "DIFFERENTIALLY_TRANSCENDENTAL");
    assert_eq!(lines[1]["line"], 2);
    assert_eq!(lines[1]["error"]["kind"], "parse_error");
    assert_eq!(lines[2]["verdict"], "FULL_GA");
    assert_eq!(lines[3]["verdict"], "NOT_CONSTANT_CONJUGATE");
}

#[test]
fn batch_order_matches_input_order() {
    let mut text = String::new();
    let mut want = Vec::new();
    for k in 0..40 {
        // Alternate slow and fast queries so completion order differs.
        if k % 2 == 0 {
            text.push_str(&format!("{{\"subcommand\":\"disp\",\"f\":\"1/(x*(x+{k}))\"}}\n"));
            want.push(k);
        } else {
            text.push_str("{\"subcommand\":\"integrability\",\"matrix\":\"[[0,-1],[1,x]]\"}\n");
            want.push(-1);
        }
    }
    let f = batch_file(&text);
    let (lines, code) = run_env(&["batch", path(&f)], &[]);
    assert_eq!(code, 0);
    let got: Vec<i64> = lines
        .iter()
        .map(|v| match v["verdict"].as_str().unwrap() {
            "DISPERSION" => v["certificate"]["polar_dispersion"].as_i64().unwrap(),
            _ => -1,
        })
        .collect();
    assert_eq!(got, want);
}

#[test]
fn missing_batch_file_is_a_usage_error() {
    let (v, code) = run(&["batch", "/nonexistent/queries.ndjson"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "io_error");
}
