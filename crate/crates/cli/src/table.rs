//! Plain tables and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything a command prints: tables followed by summary lines.
#[derive(Clone, Debug, Default)]
pub struct Output {
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            let width = |j: usize| {
                t.rows.iter().map(|r| r[j].chars().count()).chain([t.columns[j].chars().count()]).max().unwrap_or(0)
            };
            let widths: Vec<usize> = (0..t.columns.len()).map(width).collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", t.title).unwrap();
            writeln!(out, "  {}", line(&t.columns)).unwrap();
            for r in &t.rows {
                writeln!(out, "  {}", line(r)).unwrap();
            }
            out.push('\n');
        }
        for n in &self.notes {
            writeln!(out, "{n}").unwrap();
        }
        out
    }

    fn json(&self) -> String {
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|t| {
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|r| Value::Object(t.columns.iter().cloned().zip(r.iter().map(|c| json!(c))).collect::<Map<_, _>>()))
                    .collect();
                json!({ "title": t.title, "columns": t.columns, "rows": rows })
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({ "tables": tables, "notes": self.notes })).unwrap();
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        for t in &self.tables {
            w.write_record(std::iter::once("table").chain(t.columns.iter().map(String::as_str))).unwrap();
            for r in &t.rows {
                w.write_record(std::iter::once(t.title.as_str()).chain(r.iter().map(String::as_str))).unwrap();
            }
        }
        let mut s = String::from_utf8(w.into_inner().unwrap()).unwrap();
        for n in &self.notes {
            writeln!(s, "# {n}").unwrap();
        }
        s
    }
}
