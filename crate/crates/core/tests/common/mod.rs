//! A small JSON-schema checker covering the keywords the shipped schemas use:
//! `type`, `properties`, `required`, `additionalProperties: false`, `items`,
//! `const`, `enum`, `minimum` and the custom `format: "rational"`.

#![allow(dead_code)]

use std::path::PathBuf;

use serde_json::Value;

pub fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

pub fn load_schema(name: &str) -> Value {
    let path = schema_dir().join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).unwrap()
}

/// Every violation, as `path: reason`.
pub fn validate(schema: &Value, value: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, value, "$", &mut errors);
    errors
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64() || v.as_f64().is_some_and(|x| x.fract() == 0.0),
        other => panic!("unsupported type {other}"),
    }
}

fn is_rational(s: &str) -> bool {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num = num.strip_prefix('-').unwrap_or(num);
    !num.is_empty()
        && num.bytes().all(|b| b.is_ascii_digit())
        && !den.is_empty()
        && den.bytes().all(|b| b.is_ascii_digit())
        && den.bytes().any(|b| b != b'0')
}

fn check(schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    let Some(obj) = schema.as_object() else { return };
    if let Some(t) = obj.get("type") {
        let ok = match t {
            Value::String(name) => type_matches(name, v),
            Value::Array(names) => names.iter().any(|n| type_matches(n.as_str().unwrap(), v)),
            _ => panic!("bad type keyword at {path}"),
        };
        if !ok {
            errors.push(format!("{path}: expected type {t}, found {v}"));
            return;
        }
    }
    if let Some(c) = obj.get("const") {
        if c != v {
            errors.push(format!("{path}: expected {c}, found {v}"));
        }
    }
    if let Some(Value::Array(options)) = obj.get("enum") {
        if !options.contains(v) {
            errors.push(format!("{path}: {v} not in {options:?}"));
        }
    }
    if let (Some(min), Some(x)) = (obj.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            errors.push(format!("{path}: {x} below minimum {min}"));
        }
    }
    if obj.get("format").and_then(Value::as_str) == Some("rational") {
        if let Some(s) = v.as_str() {
            if !is_rational(s) {
                errors.push(format!("{path}: {s:?} is not num/den"));
            }
        }
    }
    if let Value::Object(map) = v {
        let props = obj.get("properties").and_then(Value::as_object);
        if let Some(Value::Array(req)) = obj.get("required") {
            for key in req.iter().filter_map(Value::as_str) {
                if !map.contains_key(key) {
                    errors.push(format!("{path}: missing {key}"));
                }
            }
        }
        for (key, child) in map {
            match props.and_then(|p| p.get(key)) {
                Some(sub) => check(sub, child, &format!("{path}.{key}"), errors),
                None if obj.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    errors.push(format!("{path}: unexpected key {key}"))
                }
                None => {}
            }
        }
    }
    if let (Value::Array(items), Some(sub)) = (v, obj.get("items")) {
        for (i, item) in items.iter().enumerate() {
            check(sub, item, &format!("{path}[{i}]"), errors);
        }
    }
}

#[test]
fn checker_catches_violations() {
    let schema: Value = serde_json::json!({
        "type": "object",
        "properties": {"a": {"type": "integer", "minimum": 0}, "q": {"type": "string", "format": "rational"}},
        "required": ["a"],
        "additionalProperties": false
    });
    assert!(validate(&schema, &serde_json::json!({"a": 3, "q": "-1/2"})).is_empty());
    assert_eq!(validate(&schema, &serde_json::json!({"a": -1})).len(), 1);
    assert_eq!(validate(&schema, &serde_json::json!({"q": "1/0", "z": 1})).len(), 3);
}
