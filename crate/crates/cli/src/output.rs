use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A fixed-header result table.
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Serialize)]
pub struct Metadata {
    pub version: &'static str,
    pub cutoffs: BTreeMap<String, u64>,
    pub timing_ms: u64,
}

#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub rows: Vec<Map<String, Value>>,
    pub metadata: Metadata,
}

impl OutputEnvelope {
    pub fn new(
        command: &str,
        parameters: BTreeMap<String, Value>,
        table: &Table,
        cutoffs: BTreeMap<String, u64>,
        timing_ms: u64,
    ) -> Self {
        let rows = table
            .rows
            .iter()
            .map(|r| {
                table
                    .columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(r.iter().cloned())
                    .collect()
            })
            .collect();
        Self {
            command: command.to_string(),
            parameters,
            rows,
            metadata: Metadata {
                version: env!("CARGO_PKG_VERSION"),
                cutoffs,
                timing_ms,
            },
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// JSON: the whole envelope on stdout. CSV: the table on stdout and the
/// metadata as one JSON line on stderr.
pub fn emit(env: &OutputEnvelope, table: &Table, format: Format) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, env)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(cell))?;
            }
            w.flush()?;
            eprintln!("{}", serde_json::to_string(&env.metadata)?);
        }
    }
    Ok(())
}
