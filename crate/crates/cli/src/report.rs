//! Report documents and their JSON, CSV and markdown renderings.

use serde_json::Value;

use crate::job::OutputFormat;

/// A computed result: the JSON document plus a flat table view.
#[derive(Clone, Debug)]
pub struct Document {
    pub json: Value,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// `false` when a verification inside the command failed.
    pub pass: bool,
}

impl Document {
    pub fn new(json: Value, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        Document { json, headers: headers.iter().map(|s| s.to_string()).collect(), rows, pass: true }
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }
}

/// Keys of `serde_json::Map` are kept sorted, so this is canonical.
pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn to_csv(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8 input")
}

pub fn to_markdown(headers: &[String], rows: &[Vec<String>]) -> String {
    let cell = |s: &str| s.replace('|', "\\|");
    let line = |cells: &[String]| format!("| {} |\n", cells.iter().map(|c| cell(c)).collect::<Vec<_>>().join(" | "));
    let mut out = line(headers);
    out.push_str(&format!("|{}\n", "---|".repeat(headers.len())));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

pub fn emit(doc: &Document, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(&doc.json),
        OutputFormat::Csv => to_csv(&doc.headers, &doc.rows),
        OutputFormat::Markdown => to_markdown(&doc.headers, &doc.rows),
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

fn digits(n: u64, table: &[char; 10]) -> String {
    n.to_string().bytes().map(|b| table[(b - b'0') as usize]).collect()
}

pub fn superscript(n: u64) -> String {
    digits(n, &SUPERSCRIPTS)
}

pub fn subscript(n: u64) -> String {
    digits(n, &SUBSCRIPTS)
}
