use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Number as JsonNumber, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// A table with a fixed header and numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> CliResult<Vec<u8>> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json().into_bytes()),
        }
    }

    fn to_csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| CliError::io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| fmt_float(*v)))
                .map_err(io)?;
        }
        w.into_inner().map_err(|e| CliError::io(e.to_string()))
    }

    fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| {
                        let v = JsonNumber::from_f64(*v).map_or(Value::Null, Value::Number);
                        (k.to_string(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("table serializes") + "\n"
    }
}

/// Shortest round-trip decimal, independent of locale.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:?}")
    }
}

/// Write `bytes` to `path`, or to standard output when `path` is `-`.
///
/// Files are written to a sibling temporary and renamed into place.
pub fn emit(path: &str, bytes: &[u8]) -> CliResult<()> {
    if path == "-" {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(bytes)
            .and_then(|_| out.flush())
            .map_err(|e| CliError::io(format!("stdout: {e}")));
    }
    let target = Path::new(path);
    let name = target
        .file_name()
        .ok_or_else(|| CliError::io(format!("{path}: not a file path")))?;
    let tmp = target.with_file_name(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    let res = fs::write(&tmp, bytes).and_then(|_| fs::rename(&tmp, target));
    if let Err(e) = res {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::io(format!("{path}: {e}")));
    }
    Ok(())
}
