//! Machine-readable invocation reports and their three renderings.
//!
//! Every value in a report is a string: exact monomials render as
//! `a/b·pi^k` (and parse back losslessly), decimals carry the requested
//! number of significant digits, booleans and counts print canonically.
//! That keeps the JSON schema fixed and makes byte-for-byte output
//! comparison meaningful for reproducibility checks.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

/// Output format, shared by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Aligned, human-readable columns.
    Text,
    /// RFC-4180-style rows with a header line.
    Csv,
    /// One JSON object per invocation.
    Json,
}

/// Ordered key/value pairs, serialized as a JSON map in insertion order.
#[derive(Clone, Debug, Default)]
pub struct KvList(pub Vec<(String, String)>);

impl KvList {
    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.0.push((key.into(), value.into()));
    }
}

impl Serialize for KvList {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// One invocation's report: the command, the engine that produced the
/// numbers, the echoed inputs, and the results.
#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub command: &'static str,
    pub engine: &'static str,
    pub inputs: KvList,
    pub results: KvList,
}

/// One row of the coefficient table.
#[derive(Debug, Serialize)]
pub struct TableRow {
    pub n: String,
    pub exact: String,
    pub value: String,
}

/// The table command's multi-row report.
#[derive(Debug, Serialize)]
pub struct TableRecord {
    pub command: &'static str,
    pub engine: &'static str,
    pub inputs: KvList,
    pub rows: Vec<TableRow>,
}

fn csv_lines<R: AsRef<[String]>>(rows: &[R]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(row.as_ref()).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv output is utf-8")
}

pub fn render_record(r: &OutputRecord, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(r).expect("record serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut keys = vec!["command".to_string(), "engine".to_string()];
            let mut values = vec![r.command.to_string(), r.engine.to_string()];
            for (k, v) in r.inputs.0.iter().chain(r.results.0.iter()) {
                keys.push(k.clone());
                values.push(v.clone());
            }
            csv_lines(&[keys, values])
        }
        Format::Text => {
            let mut pairs: Vec<(&str, &str)> = vec![("command", r.command), ("engine", r.engine)];
            for (k, v) in r.inputs.0.iter().chain(r.results.0.iter()) {
                pairs.push((k, v));
            }
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut out = String::new();
            for (k, v) in pairs {
                writeln!(out, "{k:<width$}  {v}").expect("write to string");
            }
            out
        }
    }
}

pub fn render_table(t: &TableRecord, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(t).expect("table serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut rows = vec![vec![
                "n".to_string(),
                "exact".to_string(),
                "value".to_string(),
            ]];
            for row in &t.rows {
                rows.push(vec![row.n.clone(), row.exact.clone(), row.value.clone()]);
            }
            csv_lines(&rows)
        }
        Format::Text => {
            let w_n = t.rows.iter().map(|r| r.n.len()).chain([1]).max().unwrap();
            let w_exact = t
                .rows
                .iter()
                .map(|r| r.exact.chars().count())
                .chain(["exact".len()])
                .max()
                .unwrap();
            let mut out = String::new();
            writeln!(out, "{:<w_n$}  {:<w_exact$}  value", "n", "exact").expect("write");
            for r in &t.rows {
                // The middle dot is multi-byte; pad by character count.
                let pad = w_exact - r.exact.chars().count();
                writeln!(
                    out,
                    "{:<w_n$}  {}{}  {}",
                    r.n,
                    r.exact,
                    " ".repeat(pad),
                    r.value
                )
                .expect("write");
            }
            out
        }
    }
}
