//! Tabular reports rendered as CSV, JSON, or aligned text.
//!
//! Counts are unbounded integers. JSON carries them as decimal strings and
//! CSV as plain digits; only text output groups thousands.

use std::fmt::Write as _;

use pathcx_core::BigUint;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Small index such as `n` or `k`; a JSON number.
    Index(usize),
    /// Unbounded count; a JSON string.
    Count(BigUint),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Index(v) => v.to_string(),
            Cell::Count(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.6}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn human(&self) -> String {
        match self {
            Cell::Count(v) => group_thousands(&v.to_string()),
            Cell::Empty => "-".into(),
            Cell::Bool(true) => "yes".into(),
            Cell::Bool(false) => "no".into(),
            other => other.plain(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Index(v) => Value::from(*v),
            Cell::Count(v) => Value::String(v.to_string()),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(v) => Value::String(v.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<BigUint> for Cell {
    fn from(v: BigUint) -> Self {
        Cell::Count(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Index(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

pub fn group_thousands(digits: &str) -> String {
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::json))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    fn csv(&self, out: &mut String) {
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_escape(&c.plain())).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
    }

    fn text(&self, out: &mut String) {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::human).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|r| r[i].len())
                    .chain([self.columns[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |items: &[String]| -> String {
            items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(out, "{}", line(&self.columns)).unwrap();
        for row in &cells {
            writeln!(out, "{}", line(row)).unwrap();
        }
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One or more named tables plus free-form notes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub title: String,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn table(mut self, table: Table) -> Self {
        self.tables.push(table);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// A single table renders as a bare CSV/JSON array; several become
    /// blank-line separated CSV blocks or one JSON object keyed by name.
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    t.csv(&mut out);
                }
            }
            Format::Json => {
                let value = if self.tables.len() == 1 && self.notes.is_empty() {
                    self.tables[0].json_rows()
                } else {
                    let mut obj = Map::new();
                    for t in &self.tables {
                        obj.insert(t.name.clone(), t.json_rows());
                    }
                    if !self.notes.is_empty() {
                        obj.insert("notes".into(), Value::from(self.notes.clone()));
                    }
                    Value::Object(obj)
                };
                out = serde_json::to_string_pretty(&value).expect("json values serialize");
                out.push('\n');
            }
            Format::Text | Format::Dot => {
                writeln!(out, "{}", self.title).unwrap();
                for t in &self.tables {
                    writeln!(out, "\n[{}]", t.name).unwrap();
                    t.text(&mut out);
                }
                for note in &self.notes {
                    writeln!(out, "\nnote: {note}").unwrap();
                }
            }
        }
        out
    }
}
