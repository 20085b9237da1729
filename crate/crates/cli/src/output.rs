//! Rendering of command results as JSON, CSV or aligned text.

use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Fixed 12-significant-digit formatting used in CSV and text output.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// One cell of a flat table.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Float(x) => fmt_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x.into())
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.into())
    }
}

/// A record type with a stable flat column layout.
pub trait Tabular {
    fn header() -> Vec<&'static str>;
    fn row(&self) -> Vec<Cell>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub command: String,
    pub params: BTreeMap<String, serde_json::Value>,
}

impl Meta {
    pub fn new(command: &str, params: BTreeMap<String, serde_json::Value>) -> Self {
        Meta {
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            params,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub meta: Meta,
    pub data: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorEnvelope {
    pub meta: Meta,
    pub error: String,
}

/// Result of one command, ready to be rendered in any format.
#[derive(Debug, Clone)]
pub struct Output {
    pub meta: Meta,
    pub data: serde_json::Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn from_records<R: Tabular + Serialize>(
        meta: Meta,
        records: &[R],
    ) -> Result<Self, CliError> {
        Ok(Output {
            meta,
            data: serde_json::to_value(records)?,
            header: R::header().into_iter().map(String::from).collect(),
            rows: records
                .iter()
                .map(|r| r.row().iter().map(Cell::render).collect())
                .collect(),
        })
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let env = Envelope {
                    meta: self.meta.clone(),
                    data: &self.data,
                };
                Ok(serde_json::to_string_pretty(&env)? + "\n")
            }
            Format::Csv => render_csv(&self.header, &self.rows),
            Format::Text => Ok(render_text(&self.header, &self.rows)),
        }
    }
}

pub fn render_csv(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render_text(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_float(3f64.sqrt() / 2.0), "0.866025403784");
        assert_eq!(fmt_float(2.598_076_211_353_316), "2.59807621135");
        assert_eq!(fmt_float(1.0), "1");
        assert_eq!(fmt_float(-0.5), "-0.5");
        assert_eq!(fmt_float(1e-7), "1e-7");
        assert_eq!(fmt_float(1.234_567_890_123_4e20), "1.23456789012e20");
        assert_eq!(fmt_float(123_456.0), "123456");
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_uses_lf_and_quotes_commas() {
        let s = render_csv(
            &["a".into(), "b".into()],
            &[vec!["1".into(), "{x,y}".into()]],
        )
        .unwrap();
        assert_eq!(s, "a,b\n1,\"{x,y}\"\n");
        assert_eq!(render_csv(&["a".into()], &[]).unwrap(), "a\n");
    }

    #[test]
    fn text_is_aligned() {
        let s = render_text(
            &["p".into(), "value".into()],
            &[vec!["2".into(), "1".into()]],
        );
        assert_eq!(s, "p  value\n2  1\n");
    }
}
