//! Line-oriented `key: value` reports, optionally rendered as JSON.

use serde_json::{Map, Value};

#[derive(Debug, Default, Clone)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&v);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self.fields.iter().cloned().collect();
        Value::Object(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json() {
        let mut r = Report::new();
        r.set("property", "prefix-convex").set("holds", false).set("checker.states", 12);
        assert_eq!(r.to_text(), "property: prefix-convex\nholds: false\nchecker.states: 12\n");
        let j = r.to_json();
        assert_eq!(j["holds"], Value::Bool(false));
        assert_eq!(j["checker.states"], 12);
    }
}
