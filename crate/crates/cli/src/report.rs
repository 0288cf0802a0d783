use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// Result of one command: a JSON report, an optional tabular view, and whether a
/// property violation was found.
pub struct Outcome {
    pub report: Value,
    pub table: Option<Table>,
    pub violation: bool,
}

impl Outcome {
    pub fn new(report: impl Serialize) -> ordercone::Result<Self> {
        Ok(Outcome { report: to_value(report)?, table: None, violation: false })
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn violation(mut self, v: bool) -> Self {
        self.violation = v;
        self
    }
}

pub fn to_value(x: impl Serialize) -> ordercone::Result<Value> {
    serde_json::to_value(x).map_err(|e| ordercone::Error::Inconsistent(format!("serialization: {e}")))
}

/// Canonical bytes: JSON objects have sorted keys (serde_json's default map is ordered).
pub fn emit(outcome: &Outcome, format: Format) -> Result<Vec<u8>, String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.report).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Csv => {
            let table = outcome.table.as_ref().ok_or("this report is not tabular; use --format json")?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.headers).map_err(|e| e.to_string())?;
            for row in &table.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())
        }
    }
}

pub fn write(bytes: &[u8], output: Option<&Path>) -> std::io::Result<()> {
    match output {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}
