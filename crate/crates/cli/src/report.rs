//! Structured command output.  Every subcommand produces a [`Report`] —
//! operation name, ordered inputs, ordered result fields and a list of named
//! boolean-ish checks — and the two renderers print the same data either as
//! aligned text lines or as a JSON object.  Numeric content is shared
//! verbatim between the renderers, so switching `--format` never changes a
//! value, only its framing.

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct Report {
    operation: String,
    inputs: Vec<(String, String)>,
    results: Vec<(String, String)>,
    checks: Vec<(String, String)>,
}

impl Report {
    pub fn new(operation: impl Into<String>) -> Report {
        Report { operation: operation.into(), inputs: Vec::new(), results: Vec::new(), checks: Vec::new() }
    }

    pub fn input(mut self, key: impl Into<String>, value: impl Into<String>) -> Report {
        self.inputs.push((key.into(), value.into()));
        self
    }

    pub fn result(mut self, key: impl Into<String>, value: impl Into<String>) -> Report {
        self.results.push((key.into(), value.into()));
        self
    }

    pub fn check(mut self, name: impl Into<String>, value: impl Into<String>) -> Report {
        self.checks.push((name.into(), value.into()));
        self
    }

    pub fn check_bool(self, name: impl Into<String>, ok: bool) -> Report {
        self.check(name, if ok { "true" } else { "false" })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("operation: {}\n", self.operation));
        for (k, v) in &self.inputs {
            out.push_str(&format!("input {k}: {v}\n"));
        }
        for (k, v) in &self.results {
            if k == "value" {
                out.push_str(&format!("result: {v}\n"));
            } else {
                out.push_str(&format!("result {k}: {v}\n"));
            }
        }
        for (k, v) in &self.checks {
            out.push_str(&format!("check {k}: {v}\n"));
        }
        out
    }

    fn render_json(&self) -> String {
        let to_map = |pairs: &[(String, String)]| {
            let mut m = Map::new();
            for (k, v) in pairs {
                m.insert(k.clone(), Value::String(v.clone()));
            }
            Value::Object(m)
        };
        let checks: Vec<Value> =
            self.checks.iter().map(|(name, ok)| json!({"name": name, "ok": ok})).collect();
        let doc = json!({
            "operation": self.operation,
            "inputs": to_map(&self.inputs),
            "result": to_map(&self.results),
            "checks": checks,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_carry_the_same_values() {
        let r = Report::new("demo")
            .input("divisor", "{1/2}P")
            .result("value", "0")
            .check_bool("pointed", true);
        let text = r.render(Format::Text);
        assert_eq!(text, "operation: demo\ninput divisor: {1/2}P\nresult: 0\ncheck pointed: true\n");
        let parsed: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(parsed["operation"], "demo");
        assert_eq!(parsed["inputs"]["divisor"], "{1/2}P");
        assert_eq!(parsed["result"]["value"], "0");
        assert_eq!(parsed["checks"][0]["name"], "pointed");
        assert_eq!(parsed["checks"][0]["ok"], "true");
    }
}
