//! End-to-end runs of the binary: payloads against the output schema,
//! error reporting and exit codes, and export round trips.

use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stablerank")).args(args).output().unwrap()
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/output.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    assert!(out.stdout.is_empty(), "{args:?} wrote to stdout on failure");
    let line = String::from_utf8(out.stderr).unwrap();
    assert_eq!(line.trim_end().lines().count(), 1, "one error line");
    (out.status.code().unwrap(), serde_json::from_str(&line).unwrap())
}

#[test]
fn payloads_match_the_schema() {
    let schema = validator();
    let commands: &[&[&str]] = &[
        &["field-table", "--p", "2", "--k", "2", "--format", "json"],
        &["subspaces", "--q", "2", "--r", "3", "--dim", "1"],
        &["subspaces", "--q", "3", "--r", "2"],
        &["gl-order", "--q", "16", "--r", "6"],
        &["building", "--q", "2", "--r", "3"],
        &["steinberg", "--q", "3", "--r", "2"],
        &["cbc", "--q", "2", "--r", "3"],
        &["delta", "--q", "3", "--r", "2"],
        &["connectivity", "--q", "2", "--r", "3"],
        &["filtration-census", "--q-field", "2", "--r", "2", "--n", "2", "--deg", "2", "--format", "json"],
        &["milnor", "--q", "5", "--j", "2"],
        &["coinvariants", "--q", "2", "--r", "2"],
        &["ranktable", "--q", "2", "--wmax", "3"],
    ];
    for args in commands {
        let v = ok_json(args);
        let errors: Vec<String> = schema.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn csv_outputs_have_headers() {
    let out = run(&["field-table", "--p", "3", "--k", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("op,a,b,value"));
    assert_eq!(text.lines().count(), 1 + 2 * 9);
    let out = run(&["filtration-census", "--q-field", "2", "--r", "2", "--n", "1", "--deg", "2"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("c,count\n"));
}

#[test]
fn errors_are_single_json_lines_with_exit_codes() {
    let schema = validator();
    let cases: &[(&[&str], &str, i32)] = &[
        (&["steinberg", "--q", "6", "--r", "2"], "invalid_parameter", 1),
        (&["cbc", "--q", "2", "--r", "4"], "budget", 2),
        (&["coinvariants", "--q", "3", "--r", "3"], "budget", 2),
        (&["homology", "--in", "/nonexistent/x.scx"], "invalid_parameter", 1),
        (&["no-such-command"], "usage", 1),
    ];
    for (args, code, exit) in cases {
        let (status, v) = error_json(args);
        assert_eq!(v["code"], *code, "{args:?}: {v}");
        assert_eq!(status, *exit, "{args:?}");
        assert!(schema.is_valid(&v));
    }
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("bad.scx");
    std::fs::write(&garbage, "not a complex\n").unwrap();
    let (status, v) = error_json(&["homology", "--in", garbage.to_str().unwrap()]);
    assert_eq!((status, v["code"].as_str()), (1, Some("parse")));
    assert!(run(&["--help"]).status.success());
}

#[test]
fn rankjump_reports_lattice_violations() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"1,1": ["10"], "1,2": ["10"], "2,1": ["10"], "2,2": ["10", "01"]}"#).unwrap();
    let v = ok_json(&["rankjump", "--q-field", "2", "--r", "2", "--n", "2", "--deg", "2", "--diagram", good.to_str().unwrap()]);
    assert_eq!(v["c"], 1);
    assert!(validator().is_valid(&v));

    // V(1,1) is not contained in V(1,2)
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"1,1": ["10"], "1,2": ["01"], "2,1": ["10", "01"], "2,2": ["10", "01"]}"#).unwrap();
    let (status, v) = error_json(&["rankjump", "--q-field", "2", "--r", "2", "--n", "2", "--deg", "2", "--diagram", bad.to_str().unwrap()]);
    assert_eq!((status, v["code"].as_str()), (1, Some("lattice_violation")));
}

#[test]
fn exported_complexes_round_trip_through_homology() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.scx");
    let v = ok_json(&["cbc", "--q", "2", "--r", "3", "--export", path.to_str().unwrap()]);
    assert!(std::path::Path::new(v["export"]["registry"].as_str().unwrap()).exists());
    let h = ok_json(&["homology", "--in", path.to_str().unwrap(), "--reduced"]);
    let direct = ok_json(&["connectivity", "--q", "2", "--r", "3"]);
    assert_eq!(h, direct["homology"]);
    assert_eq!(direct["homology"]["3"], json!({"betti": 8, "torsion": []}));
}
