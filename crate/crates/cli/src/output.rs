//! Rendering of command results as JSON, CSV or TSV.
//!
//! Every command produces both a JSON document and a flat table; the format
//! flag picks one. Rationals are always written as exact `num/den` strings.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Tsv,
}

/// Flat rendering: `#`-prefixed comment lines, a header, then rows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            comments: Vec::new(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// A finished command: its document, its table and its exit status.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub command: &'static str,
    pub document: Value,
    pub table: Table,
    pub status: i32,
}

impl CommandOutput {
    pub fn new(command: &'static str, document: impl Serialize, table: Table) -> Self {
        CommandOutput {
            command,
            document: serde_json::to_value(document).expect("documents serialize"),
            table,
            status: 0,
        }
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Json => Ok(render_json(self.command, &self.document)),
            Format::Csv => render_table(&self.table, b','),
            Format::Tsv => render_table(&self.table, b'\t'),
        }
    }
}

/// `{"schema_version": .., "command": .., ...document}` followed by a newline.
pub fn render_json(command: &str, document: &Value) -> String {
    let mut map = Map::new();
    map.insert("schema_version".into(), SCHEMA_VERSION.into());
    map.insert("command".into(), command.into());
    match document {
        Value::Object(fields) => {
            for (k, v) in fields {
                map.insert(k.clone(), v.clone());
            }
        }
        other => {
            map.insert("result".into(), other.clone());
        }
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("valid JSON value");
    s.push('\n');
    s
}

fn render_table(table: &Table, delimiter: u8) -> anyhow::Result<String> {
    let mut out = String::new();
    for c in &table.comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(Vec::new());
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    out.push_str(&String::from_utf8(w.into_inner()?)?);
    Ok(out)
}

/// The structured record printed for usage and precondition errors.
pub fn error_record(kind: &str, message: &str) -> String {
    render_json(
        "error",
        &serde_json::json!({ "error": { "kind": kind, "message": message } }),
    )
}
