//! Rendering of command results as JSON or CSV with 15 significant digits.

use std::io::{self, Write};

use serde_json::{Number, Value};

use crate::config::Format;

pub const SIGNIFICANT_DIGITS: usize = 15;

/// Rounds to [`SIGNIFICANT_DIGITS`] and folds `-0.0` into `0.0`.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest decimal form of the rounded value.
pub fn fmt_float(x: f64) -> String {
    let r = round_sig(x);
    let plain = format!("{r}");
    if r != 0.0 && r.abs() < 1e-6 {
        format!("{r:e}")
    } else {
        plain
    }
}

pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| Number::from_f64(round_sig(x)))
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_float(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &'static [&'static str]) -> Self {
        Self {
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// What a command produced: a JSON document, a CSV table and a verdict.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub table: Table,
    pub passed: bool,
}

pub fn render<W: Write>(report: &Report, format: Format, out: W) -> io::Result<()> {
    match format {
        Format::Json => write_json(&report.json, out),
        Format::Csv => write_csv(&report.table, out),
    }
}

fn write_json<W: Write>(v: &Value, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, &round_json(v.clone()))?;
    writeln!(out)?;
    out.flush()
}

fn write_csv<W: Write>(t: &Table, out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(t.headers)?;
    for row in &t.rows {
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.flush()
}
