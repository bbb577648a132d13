//! Shared helpers for the CLI integration tests: process spawning, CSV
//! parsing, fixture paths, and a validator for the minimal JSON-schema
//! subset the shipped schema files use (type, enum, required, properties,
//! items, additionalProperties).
//!
//! Each test binary links this module and uses its own subset.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn mlqm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mlqm"))
}

pub fn run(args: &[&str]) -> Output {
    mlqm().args(args).output().expect("binary spawns")
}

/// Run and insist on exit 0, returning captured stdout.
pub fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "mlqm {:?} failed with {:?}: {}",
        args,
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

pub fn run_json(args: &[&str]) -> Value {
    serde_json::from_str(&run_ok(args)).expect("valid JSON output")
}

pub fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .expect("repository root")
}

pub fn fixture(rel: &str) -> String {
    std::fs::read_to_string(repo_root().join("fixtures").join(rel))
        .unwrap_or_else(|e| panic!("fixture {rel}: {e}"))
}

/// Header and data rows of a CSV document.
pub fn parse_csv(body: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = body.lines();
    let header = lines
        .next()
        .expect("header row")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|line| line.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

pub fn column(body: &str, name: &str) -> Vec<f64> {
    let (header, rows) = parse_csv(body);
    let idx = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("column {name} in {header:?}"));
    rows.iter()
        .map(|row| row[idx].parse().expect("numeric cell"))
        .collect()
}

pub fn validate_schema(value: &Value, schema_file: &str) {
    let schema: Value =
        serde_json::from_str(&fixture(&format!("schemas/{schema_file}"))).expect("schema parses");
    if let Err(msg) = check(value, &schema, "$") {
        panic!("{schema_file}: {msg}");
    }
}

fn type_ok(value: &Value, ty: &str) -> bool {
    match ty {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "number" => value.is_number(),
        "integer" => value.is_i64() || value.is_u64(),
        other => panic!("unsupported schema type {other:?}"),
    }
}

fn check(value: &Value, schema: &Value, path: &str) -> Result<(), String> {
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not in {options:?}"));
        }
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        if !type_ok(value, ty) {
            return Err(format!("{path}: expected {ty}, got {value}"));
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        let obj = value.as_object().ok_or_else(|| format!("{path}: not an object"))?;
        for key in required {
            let key = key.as_str().expect("required key name");
            if !obj.contains_key(key) {
                return Err(format!("{path}: missing required key {key:?}"));
            }
        }
    }
    let properties = schema.get("properties").and_then(Value::as_object);
    if let Some(obj) = value.as_object() {
        for (key, sub) in obj {
            let sub_path = format!("{path}.{key}");
            match properties.and_then(|p| p.get(key)) {
                Some(sub_schema) => check(sub, sub_schema, &sub_path)?,
                None => match schema.get("additionalProperties") {
                    Some(Value::Bool(false)) => {
                        return Err(format!("{path}: unexpected key {key:?}"))
                    }
                    Some(Value::Bool(true)) | None => {}
                    Some(extra_schema) => check(sub, extra_schema, &sub_path)?,
                },
            }
        }
    }
    if let (Some(items), Some(elements)) = (schema.get("items"), value.as_array()) {
        for (i, element) in elements.iter().enumerate() {
            check(element, items, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}
