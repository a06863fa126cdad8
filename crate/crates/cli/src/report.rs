use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// How the accuracy attached to a [`Quantity`] should be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Accuracy {
    Residual,
    Tolerance,
    Gap,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantity {
    pub name: String,
    pub value: f64,
    pub accuracy: f64,
    pub accuracy_kind: Accuracy,
}

/// Everything a command computed, echoed with its inputs.
///
/// Wall time is deliberately absent so identical runs give identical
/// reports; it is printed on standard error instead.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: Vec<Quantity>,
    pub method: Option<String>,
    pub notes: Vec<String>,
    pub passed: Option<bool>,
}

impl RunReport {
    pub fn new(command: &'static str) -> Self {
        Self {
            tool: "hyperc",
            version: env!("CARGO_PKG_VERSION"),
            command,
            inputs: BTreeMap::new(),
            outputs: Vec::new(),
            method: None,
            notes: Vec::new(),
            passed: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, name: &str, value: f64, accuracy: f64, kind: Accuracy) -> &mut Self {
        self.outputs.push(Quantity {
            name: name.to_string(),
            value,
            accuracy,
            accuracy_kind: kind,
        });
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.tool, self.command, self.version);
        for (k, v) in &self.inputs {
            let v = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(s, "  {k:<14} {v}");
        }
        if let Some(m) = &self.method {
            let _ = writeln!(s, "  method         {m}");
        }
        let width = self.outputs.iter().map(|q| q.name.len()).max().unwrap_or(0);
        for q in &self.outputs {
            let kind = match q.accuracy_kind {
                Accuracy::Residual => "residual",
                Accuracy::Tolerance => "tol",
                Accuracy::Gap => "gap",
            };
            let _ = writeln!(
                s,
                "  {:<width$} = {:<22} ({kind} {:.1e})",
                q.name,
                format!("{:.16}", q.value),
                q.accuracy
            );
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        if let Some(p) = self.passed {
            let _ = writeln!(s, "  result: {}", if p { "PASS" } else { "FAIL" });
        }
        s
    }
}
