//! JSON outputs validate against the shipped schema files.

mod common;

use std::path::PathBuf;

use common::{json, run};
use serde_json::Value;

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(name: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&schema(name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:#?}");
}

fn output(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    json(&out)
}

#[test]
fn estimate_output() {
    let v = output(&["estimate", "--n", "16", "--d", "7", "--alpha2", "12", "--we", "5", "--wm", "3", "--factory", "4"]);
    assert_eq!(v["schema"], "resource_estimate");
    assert_valid("resource_estimate", &v);
}

#[test]
fn optimization_output() {
    let v = output(&["optimize", "--n", "8"]);
    assert_valid("optimization_result", &v);
    let v = output(&["estimate", "--n", "8", "--d", "5"]);
    assert_valid("resource_estimate", &v);
}

#[test]
fn table_output() {
    assert_valid("results_table", &output(&["table", "--n", "8,10"]));
    assert_valid("results_table", &output(&["table"]));
}

#[test]
fn qec_output() {
    let v = output(&["qec-sample", "--d", "3", "--alpha2", "4", "--kappa-ratio", "1e-3", "--trials", "1"]);
    assert_valid("qec_record", &v);
}

#[test]
fn verification_output() {
    let v = output(&["verify-circuits", "--suite", "adders", "--prime", "7"]);
    assert_valid("verify_report", &v);
    let (code, out, _) = run(&["verify-circuits", "--suite", "kaliski", "--inject-fault"]);
    assert_eq!(code, 3);
    assert_valid("verify_report", &json(&out));
}

#[test]
fn schemas_reject_foreign_documents() {
    let v = output(&["qec-sample", "--d", "3", "--alpha2", "4", "--trials", "1"]);
    let validator = jsonschema::validator_for(&schema("resource_estimate")).unwrap();
    assert!(!validator.is_valid(&v));
    let mut extra = v.clone();
    extra["result"]["extra"] = Value::from(1);
    assert!(!jsonschema::validator_for(&schema("qec_record")).unwrap().is_valid(&extra));
}

#[test]
fn config_schema_matches_config_keys() {
    let s = schema("run_config");
    let keys: Vec<&String> = s["properties"].as_object().unwrap().keys().collect();
    let mut file = serde_json::Map::new();
    for k in keys {
        file.insert(k.clone(), Value::Null);
    }
    let parsed: cli::RunConfig = serde_json::from_value(Value::Object(file)).unwrap();
    assert_eq!(parsed, cli::RunConfig::default());
    let example = serde_json::json!({"n": 16, "kappa_ratio": 1e-4, "format": "text", "prime": "13", "suite": "all", "n_list": [8, 16]});
    assert!(jsonschema::validator_for(&s).unwrap().is_valid(&example));
    assert!(serde_json::from_value::<cli::RunConfig>(example).is_ok());
}
