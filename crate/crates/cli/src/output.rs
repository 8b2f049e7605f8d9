use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A rectangular result; cells are exact JSON values (integers, `"p/q"`
/// strings, polynomial strings).
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().cloned()).collect()))
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r.iter().map(cell))?;
                }
                w.flush()
            }
            Format::Text => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|i| cells.iter().map(|r| r[i].len()).chain([self.columns[i].len()]).max().unwrap_or(0))
                    .collect();
                let line = |out: &mut dyn Write, r: &[String]| -> io::Result<()> {
                    let padded: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    writeln!(out, "{}", padded.join("  ").trim_end())
                };
                line(out, &self.columns)?;
                for r in &cells {
                    line(out, r)?;
                }
                Ok(())
            }
        }
    }
}

pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Flattens a report into `field,value` rows for text and CSV output.
pub fn report_table(report: &cobord::genera::Report) -> Table {
    let mut t = Table::new(&["field", "value"]);
    t.push(vec!["check".into(), report.check.clone().into()]);
    t.push(vec!["pass".into(), report.pass.into()]);
    flatten("input", &report.inputs, &mut t);
    flatten("witness", &report.witness, &mut t);
    t
}

fn flatten(prefix: &str, v: &Value, t: &mut Table) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&format!("{prefix}.{k}"), x, t);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, t);
            }
        }
        Value::Null => {}
        Value::Array(_) => t.push(vec![prefix.into(), v.to_string().into()]),
        other => t.push(vec![prefix.into(), other.clone()]),
    }
}
