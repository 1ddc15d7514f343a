//! JSON serialization helpers: exact rationals become integers when they
//! are integral and fit a machine word, and `"p/q"` strings otherwise, so
//! no consumer ever sees a rounded value.

use serde_json::{json, Map, Value};
use stringpoly::Rat;

pub fn rat_json(x: &Rat) -> Value {
    if x.is_integer() {
        if let Ok(v) = i64::try_from(x.to_integer()) {
            return json!(v);
        }
    }
    json!(format!("{}/{}", x.numer(), x.denom()))
}

pub fn rvec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn points_json(pts: &[Vec<Rat>]) -> Value {
    Value::Array(pts.iter().map(|p| rvec_json(p)).collect())
}

pub fn ivec_json(v: &[i64]) -> Value {
    json!(v)
}

/// Root report object with the schema tag and echoed command.
pub fn report(command: &str) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("schema".into(), json!(1));
    map.insert("command".into(), json!(command));
    map
}

pub struct CheckList {
    checks: Vec<Value>,
    all_passed: bool,
}

impl CheckList {
    pub fn new() -> Self {
        CheckList { checks: Vec::new(), all_passed: true }
    }

    pub fn push(&mut self, name: &str, outcome: Result<Value, String>) {
        match outcome {
            Ok(detail) => self.checks.push(json!({
                "check": name,
                "pass": true,
                "detail": detail,
            })),
            Err(witness) => {
                self.all_passed = false;
                self.checks.push(json!({
                    "check": name,
                    "pass": false,
                    "witness": witness,
                }));
            }
        }
    }

    pub fn all_passed(&self) -> bool {
        self.all_passed
    }

    pub fn into_value(self) -> Value {
        Value::Array(self.checks)
    }
}
