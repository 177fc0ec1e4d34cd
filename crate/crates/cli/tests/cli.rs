use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cmcells(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmcells")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path: PathBuf =
        [env!("CARGO_MANIFEST_DIR"), "..", "..", "schemas", "v1", &format!("{name}.schema.json")].iter().collect();
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&doc).unwrap()
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let errors: Vec<String> = s.iter_errors(v).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn info_reports_order_and_degrees() {
    let v = json(&cmcells(&["info", "--config", r#"{"group":"b2"}"#]));
    assert_eq!(v["order"], 8);
    assert_eq!(v["degrees"], serde_json::json!([2, 4]));
    assert_valid("info", &v);
    let v = json(&cmcells(&["info", "--config", r#"{"group":"cyclic","d":2}"#]));
    assert_eq!(v["order"], 2);
    let v = json(&cmcells(&["info", "--group", "dihedral", "--m", "5"]));
    assert_eq!(v["order"], 10);
    assert_valid("info", &v);
}

#[test]
fn malformed_config_is_a_config_error_with_position() {
    let out = cmcells(&["info", "--config", "{\"group\": \"b2\",\n \"d\": }"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn families_of_b2_at_equal_parameters() {
    let v = json(&cmcells(&["families", "--group", "b2", "--c", "a=1,b=1"]));
    assert_eq!(v["blocks"].as_array().unwrap().len(), 3);
    assert_eq!(v["exact"], true);
    assert_valid("families", &v);
}

#[test]
fn left_cells_of_b2_and_reproducibility() {
    let args = ["cells", "--kind", "left", "--group", "b2", "--c", "a=1,b=2", "--seed", "7"];
    let a = cmcells(&args);
    let v = json(&a);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 6);
    assert_eq!(v["kind"], "left");
    assert_valid("cells", &v);
    let b = cmcells(&args);
    assert_eq!(a.stdout, b.stdout, "same seed must give byte-identical output");

    let v = json(&cmcells(&["cells", "--kind", "two-sided", "--group", "b2", "--c", "1,1", "--seed", "2"]));
    assert_eq!(v["blocks"].as_array().unwrap().len(), 3);
    assert_valid("cells", &v);
    let v = json(&cmcells(&[
        "cells",
        "--kind",
        "right",
        "--group",
        "cyclic",
        "--d",
        "4",
        "--k",
        "1,1,-1,-1",
        "--seed",
        "2",
    ]));
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);
    assert_valid("cells", &v);
}

#[test]
fn cellular_characters_in_rank_one() {
    let v = json(&cmcells(&["cellular", "--group", "cyclic", "--d", "3", "--k", "1,1,-2", "--seed", "1"]));
    let chars = v["characters"].as_array().unwrap();
    assert_eq!(chars.len(), 2);
    assert!(chars.iter().any(|c| c["1"] == 1 && c["eps^2"] == 1));
    assert!(chars.iter().any(|c| c["eps"] == 1));
    assert_valid("cellular", &v);
}

#[test]
fn verification_suites_pass() {
    let v = json(&cmcells(&["verify", "--suite", "minpoly", "--group", "b2", "--seed", "3"]));
    assert_eq!(v["passed"], true);
    assert_valid("verify", &v);
    let v = json(&cmcells(&["verify", "--suite", "all", "--group", "cyclic", "--d", "5", "--seed", "3"]));
    assert_eq!(v["passed"], true);
    assert_valid("verify", &v);
}

#[test]
fn usage_and_config_errors_exit_with_one() {
    for args in [
        vec!["verify", "--suite", "bogus", "--group", "b2", "--seed", "1"],
        vec!["cells", "--group", "b2", "--c", "1,2"],
        vec!["families", "--group", "b2", "--c", "1,2", "--k", "1,-1"],
        vec!["families", "--group", "b2"],
        vec!["families", "--group", "b2", "--c", "0.5,1"],
        vec!["cells", "--kind", "diagonal", "--group", "b2", "--c", "1,2", "--seed", "1"],
        vec!["info", "--group", "e8"],
        vec!["frobnicate"],
    ] {
        let out = cmcells(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn table_format_is_plain_text() {
    let out = cmcells(&["info", "--group", "b2", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("chi") && text.contains("t + t^3"));
}

#[test]
fn thread_cap_is_honoured_and_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_cmcells"))
        .args(["verify", "--suite", "dunkl", "--group", "cyclic", "--d", "3", "--seed", "1"])
        .env("CM_CELLS_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_cmcells"))
        .args(["info", "--group", "b2"])
        .env("CM_CELLS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_schema_accepts_example_configs() {
    let s = schema("config");
    for doc in [r#"{"group":"b2","c":{"a":"1","b":2},"seed":7}"#, r#"{"group":"cyclic","d":3,"k":[1,1,-2],"seed":1}"#] {
        let v: Value = serde_json::from_str(doc).unwrap();
        assert!(s.is_valid(&v), "{doc}");
        let out = cmcells(&["families", "--config", doc]);
        assert!(out.status.success(), "{doc}");
    }
    let both: Value = serde_json::from_str(r#"{"group":"b2","c":[1,2],"k":[[1,-1],[1,-1]]}"#).unwrap();
    assert!(!s.is_valid(&both));
}
