//! Rendering of command results as aligned text, CSV or a JSON envelope.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// One table cell. Floats keep full round-trip precision in every format.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            // non-finite floats have no JSON form
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
        }
    }

    fn plain(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // Debug is the shortest string that parses back to the same f64
            Cell::Num(v) if v.is_finite() => format!("{v:?}"),
            Cell::Num(_) => String::new(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

/// Everything a subcommand produces.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub warnings: Vec<String>,
    /// Replaces the default aligned table in text mode.
    pub text: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Report { command, params: Map::new(), columns, rows: Vec::new(), warnings: Vec::new(), text: None }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("parameters serialise");
        self.params.insert(key.to_owned(), v);
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Text => self.write_text(out),
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_text(&self, out: &mut dyn Write) -> io::Result<()> {
        if let Some(text) = &self.text {
            out.write_all(text.as_bytes())?;
        } else {
            let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::plain).collect()).collect();
            let header: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
            out.write_all(align(&header, &cells).as_bytes())?;
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}")?;
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::plain))?;
        }
        w.flush()
    }

    fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.to_json())).collect();
                Value::Object(obj)
            })
            .collect();
        let envelope = serde_json::json!({
            "tool_version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "params": self.params,
            "rows": rows,
            "warnings": self.warnings,
        });
        serde_json::to_writer_pretty(&mut *out, &envelope)?;
        writeln!(out)
    }
}

/// Left-aligned columns separated by two spaces.
pub fn align(header: &[String], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut s = String::new();
    for line in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
        let cells: Vec<String> = line.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        s.push_str(cells.join("  ").trim_end());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", vec!["n", "value", "ok"]);
        r.param("x", 1.0);
        r.push(vec![1u32.into(), 0.1f64.into(), true.into()]);
        r.push(vec![2u32.into(), 1.0e-20f64.into(), false.into()]);
        r
    }

    fn render(r: &Report, f: Format) -> String {
        let mut buf = Vec::new();
        r.write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_has_header_and_round_trips() {
        let s = render(&sample(), Format::Csv);
        assert_eq!(s, "n,value,ok\n1,0.1,true\n2,1e-20,false\n");
    }

    #[test]
    fn json_envelope() {
        let v: Value = serde_json::from_str(&render(&sample(), Format::Json)).unwrap();
        assert_eq!(v["command"], "demo");
        assert_eq!(v["params"]["x"], 1.0);
        assert_eq!(v["rows"][1]["value"].as_f64(), Some(1.0e-20));
        assert!(v["warnings"].as_array().unwrap().is_empty());
    }

    #[test]
    fn text_is_aligned() {
        let s = render(&sample(), Format::Text);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "n  value  ok");
        assert_eq!(lines[2], "2  1e-20  false");
    }

    #[test]
    fn nan_becomes_null() {
        assert_eq!(Cell::Num(f64::NAN).to_json(), Value::Null);
        assert_eq!(Cell::Num(f64::NAN).plain(), "");
    }
}
