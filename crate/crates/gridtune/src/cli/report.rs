//! CSV and JSON report emission.
//!
//! Floats serialize with 17 significant digits (`{:.16e}`), which `f64`
//! round-trips losslessly, infinities as the literal `inf`/`-inf`, and
//! undefined entries as `nan`; emitted files are byte-stable given the
//! same inputs, so goldens diff cleanly.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Lossless, diff-stable float formatting shared by every report.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// Parse a float written by [`fmt_float`].
pub fn parse_float(s: &str) -> Result<f64> {
    match s {
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        "nan" => Ok(f64::NAN),
        other => other
            .parse::<f64>()
            .map_err(|e| Error::Input(format!("bad float {other:?}: {e}"))),
    }
}

/// One CSV cell: either a float (formatted losslessly) or verbatim text.
#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(x) => fmt_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

/// A small fixed-column CSV table: header row then data rows.
#[derive(Debug, Clone)]
pub struct CsvTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new(columns: Vec<&'static str>) -> Self {
        CsvTable {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let rendered: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", rendered.join(","));
        }
        out
    }
}

/// Parse CSV text emitted by [`CsvTable::render`] back into header and
/// string cells (values are unquoted and never contain commas).
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Input("empty CSV".into()))?
        .split(',')
        .map(String::from)
        .collect();
    let rows = lines
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    Ok((header, rows))
}
