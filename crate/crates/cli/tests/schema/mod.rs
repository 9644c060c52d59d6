//! Minimal JSON Schema validator covering the subset the shipped schemas
//! use: type (including unions), properties / required /
//! additionalProperties, items, enum, anyOf, minimum, $ref into
//! #/definitions, and the two literal patterns that appear in the schemas.

use serde_json::Value;

pub fn validate(schema: &Value, instance: &Value) -> Result<(), String> {
    check(schema, schema, instance, "$")
}

fn check(root: &Value, schema: &Value, instance: &Value, path: &str) -> Result<(), String> {
    let Some(obj) = schema.as_object() else {
        return Err(format!("{path}: schema node is not an object"));
    };

    if let Some(reference) = obj.get("$ref").and_then(Value::as_str) {
        let target = resolve_ref(root, reference)
            .ok_or_else(|| format!("{path}: unresolvable $ref {reference}"))?;
        return check(root, target, instance, path);
    }

    if let Some(any_of) = obj.get("anyOf").and_then(Value::as_array) {
        let mut errors = Vec::new();
        for (i, branch) in any_of.iter().enumerate() {
            match check(root, branch, instance, &format!("{path}<anyOf:{i}>")) {
                Ok(()) => return Ok(()),
                Err(e) => errors.push(e),
            }
        }
        return Err(format!(
            "{path}: no anyOf branch matched: {}",
            errors.join(" | ")
        ));
    }

    if let Some(types) = obj.get("type") {
        let allowed: Vec<&str> = match types {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: malformed type keyword")),
        };
        if !allowed.iter().any(|t| matches_type(t, instance)) {
            return Err(format!(
                "{path}: expected type {allowed:?}, got {}",
                type_name(instance)
            ));
        }
    }

    if let Some(variants) = obj.get("enum").and_then(Value::as_array) {
        if !variants.contains(instance) {
            return Err(format!("{path}: {instance} not among enum variants"));
        }
    }

    if let Some(min) = obj.get("minimum").and_then(Value::as_i64) {
        if let Some(v) = instance.as_i64() {
            if v < min {
                return Err(format!("{path}: {v} below minimum {min}"));
            }
        }
    }

    if let Some(pattern) = obj.get("pattern").and_then(Value::as_str) {
        if let Some(text) = instance.as_str() {
            if !matches_pattern(pattern, text)? {
                return Err(format!("{path}: {text:?} does not match {pattern:?}"));
            }
        }
    }

    if let Some(inst_obj) = instance.as_object() {
        if let Some(required) = obj.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !inst_obj.contains_key(key) {
                    return Err(format!("{path}: missing required key {key:?}"));
                }
            }
        }
        let properties = obj.get("properties").and_then(Value::as_object);
        if let Some(props) = properties {
            for (key, sub) in props {
                if let Some(v) = inst_obj.get(key) {
                    check(root, sub, v, &format!("{path}.{key}"))?;
                }
            }
        }
        if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in inst_obj.keys() {
                let declared = properties.map_or(false, |p| p.contains_key(key));
                if !declared {
                    return Err(format!("{path}: unexpected key {key:?}"));
                }
            }
        }
    }

    if let Some(items) = obj.get("items") {
        if let Some(arr) = instance.as_array() {
            for (i, v) in arr.iter().enumerate() {
                check(root, items, v, &format!("{path}[{i}]"))?;
            }
        }
    }

    Ok(())
}

fn resolve_ref<'a>(root: &'a Value, reference: &str) -> Option<&'a Value> {
    let path = reference.strip_prefix("#/")?;
    let mut node = root;
    for part in path.split('/') {
        node = node.get(part)?;
    }
    Some(node)
}

fn matches_type(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.as_i64().is_some() || v.as_u64().is_some(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        _ => false,
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

/// The shipped schemas use exactly two patterns; anything else is a schema
/// bug we want to hear about.
fn matches_pattern(pattern: &str, text: &str) -> Result<bool, String> {
    match pattern {
        "^[0-9]+$" => Ok(!text.is_empty() && text.bytes().all(|b| b.is_ascii_digit())),
        "^(rational|fp:[0-9]+)$" => Ok(text == "rational"
            || text.strip_prefix("fp:").map_or(false, |rest| {
                !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())
            })),
        other => Err(format!(
            "pattern {other:?} not supported by the test validator"
        )),
    }
}
