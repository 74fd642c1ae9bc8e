use std::time::Duration;

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "1";

/// What a command produced: counts of checks, the failing ones, a
/// command-specific JSON payload and a plain-text rendering.
#[derive(Default)]
pub struct Outcome {
    pub checked: usize,
    pub failures: Vec<Value>,
    pub result: Map<String, Value>,
    pub text: Vec<String>,
}

impl Outcome {
    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }

    /// Records one check; `failure` is stored when it did not hold.
    pub fn check(&mut self, holds: bool, failure: impl FnOnce() -> Value) {
        self.checked += 1;
        if !holds {
            self.failures.push(failure());
        }
    }

    pub fn failed(&self) -> usize {
        self.failures.len()
    }

    pub fn passed(&self) -> usize {
        self.checked - self.failures.len()
    }
}

/// The JSON report. Wall-clock time is left out so that identical runs
/// give identical bytes.
pub fn to_json(command: &[String], seed: u64, outcome: &Outcome) -> String {
    let mut root = Map::new();
    root.insert("schema".into(), json!(SCHEMA));
    root.insert("command".into(), json!(command));
    root.insert("seed".into(), json!(seed));
    root.insert(
        "counts".into(),
        json!({
            "checked": outcome.checked,
            "passed": outcome.passed(),
            "failed": outcome.failed(),
        }),
    );
    root.insert("failures".into(), Value::Array(outcome.failures.clone()));
    for (k, v) in &outcome.result {
        root.entry(k.clone()).or_insert_with(|| v.clone());
    }
    serde_json::to_string_pretty(&Value::Object(root)).expect("json values serialize")
}

pub fn to_text(outcome: &Outcome, elapsed: Duration) -> String {
    let mut out = String::new();
    for line in &outcome.text {
        out.push_str(line);
        out.push('\n');
    }
    for f in outcome.failures.iter().take(20) {
        out.push_str(&format!("FAILED {f}\n"));
    }
    if outcome.failed() > 20 {
        out.push_str(&format!("... {} more failures\n", outcome.failed() - 20));
    }
    if outcome.checked > 0 {
        out.push_str(&format!(
            "checked {}, passed {}, failed {} in {:.2}s\n",
            outcome.checked,
            outcome.passed(),
            outcome.failed(),
            elapsed.as_secs_f64()
        ));
    }
    out
}
