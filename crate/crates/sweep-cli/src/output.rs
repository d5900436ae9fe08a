//! Deterministic artifact rendering. A given table renders to the same
//! bytes on every run: floats use a fixed 17-significant-digit scientific
//! format in CSV and shortest round-trip encoding in JSON, and metadata
//! carries only the command line, seed, and crate version.

use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

/// One table cell: a float datum or a short label such as a flag string.
#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

/// Column-labelled rows produced by a sweep.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// Per-run metadata recorded in every artifact.
#[derive(Debug, Clone)]
pub struct Metadata {
    pub command: String,
    pub seed: u64,
}

impl Metadata {
    /// Captures the invoking command line and the effective seed.
    pub fn capture(seed: u64) -> Metadata {
        let command = std::env::args().collect::<Vec<_>>().join(" ");
        Metadata { command, seed }
    }
}

/// Derived quantities appended after the data rows.
pub type Summary = Vec<(&'static str, Cell)>;

/// Crate version recorded in artifacts.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Renders `#`-prefixed metadata, a header row, one CSV line per data row,
/// and trailing `#`-prefixed summary lines.
pub fn render_csv(meta: &Metadata, table: &Table, summary: &Summary) -> String {
    let mut out = String::new();
    out.push_str(&format!("# command: {}\n", meta.command));
    out.push_str(&format!("# seed: {}\n", meta.seed));
    out.push_str(&format!("# version: {VERSION}\n"));
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let line: Vec<String> = row.iter().map(Cell::csv).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    for (key, value) in summary {
        out.push_str(&format!("# {key}: {}\n", value.csv()));
    }
    out
}

/// Renders the same content as a single JSON document.
pub fn render_json(meta: &Metadata, table: &Table, summary: &Summary) -> String {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| Value::Array(row.iter().map(Cell::json).collect()))
        .collect();
    let mut doc = Map::new();
    doc.insert(
        "metadata".into(),
        json!({"command": meta.command, "seed": meta.seed, "version": VERSION}),
    );
    doc.insert("columns".into(), json!(table.columns));
    doc.insert("rows".into(), Value::Array(rows));
    if !summary.is_empty() {
        let mut s = Map::new();
        for (key, value) in summary {
            s.insert((*key).into(), value.json());
        }
        doc.insert("summary".into(), Value::Object(s));
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
    text.push('\n');
    text
}

/// Writes `content` to `out`, or to stdout when no path was given.
pub fn write_artifact(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
