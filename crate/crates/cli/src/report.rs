//! Rendering of command results as aligned text, CSV or JSON.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Float(f64),
    /// Exact integer, kept as its decimal string.
    Int(String),
    Text(String),
    Bool(bool),
    Floats(Vec<f64>),
    /// Exact integers or `p/q` rationals.
    Ints(Vec<String>),
    Null,
}

impl Cell {
    pub fn int(x: impl ToString) -> Self {
        Cell::Int(x.to_string())
    }

    pub fn text(x: impl Into<String>) -> Self {
        Cell::Text(x.into())
    }

    pub fn opt_float(x: Option<f64>) -> Self {
        x.map_or(Cell::Null, Cell::Float)
    }

    fn table(&self) -> String {
        match self {
            Cell::Float(x) => sig6(*x),
            Cell::Int(s) | Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Floats(v) => v.iter().map(|x| sig6(*x)).collect::<Vec<_>>().join(" "),
            Cell::Ints(v) => v.join(" "),
            Cell::Null => "-".into(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => exact(*x),
            Cell::Int(s) | Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Floats(v) => v.iter().map(|x| exact(*x)).collect::<Vec<_>>().join(" "),
            Cell::Ints(v) => v.join(" "),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => json_float(*x),
            Cell::Int(s) => s.parse::<Number>().map(Value::Number).unwrap_or_else(|_| Value::String(s.clone())),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Floats(v) => Value::Array(v.iter().map(|x| json_float(*x)).collect()),
            Cell::Ints(v) => Value::Array(v.iter().map(|s| Cell::Int(s.clone()).json()).collect()),
            Cell::Null => Value::Null,
        }
    }
}

fn json_float(x: f64) -> Value {
    Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(exact(x)))
}

/// Shortest representation that parses back to the same `f64`.
pub fn exact(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Six significant figures, `%g` style.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return exact(x);
    }
    if x == 0.0 {
        return "0".into();
    }
    // the exponent after rounding to six figures picks the layout
    let s = format!("{x:.5e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Either a single record (key/value layout, JSON object) or a listing
/// (column layout, JSON array).
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    listing: bool,
}

impl Report {
    pub fn record(fields: Vec<(&'static str, Cell)>) -> Self {
        let (columns, row) = fields.into_iter().unzip();
        Report { columns, rows: vec![row], listing: false }
    }

    pub fn listing(columns: Vec<&'static str>, rows: Vec<Vec<Cell>>) -> Self {
        Report { columns, rows, listing: true }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Table if !self.listing => {
                let width = self.columns.iter().map(|c| c.len()).max().unwrap_or(0);
                for (c, v) in self.columns.iter().zip(&self.rows[0]) {
                    writeln!(out, "{c:<width$}  {}", v.table())?;
                }
            }
            Format::Table => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::table).collect()).collect();
                let widths: Vec<usize> = self
                    .columns
                    .iter()
                    .enumerate()
                    .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
                    .collect();
                let line = |items: Vec<&str>| {
                    items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                writeln!(out, "{}", line(self.columns.clone()))?;
                for r in &cells {
                    writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
                }
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r.iter().map(Cell::csv))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let objects: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let map: Map<String, Value> =
                            self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect();
                        Value::Object(map)
                    })
                    .collect();
                let v = if !self.listing { objects.into_iter().next().unwrap() } else { Value::Array(objects) };
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            }
        }
        Ok(())
    }
}
