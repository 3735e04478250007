//! Versioned record streams: CSV, JSON lines and aligned text.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;

use crate::eigenfunctions::WavefunctionSample;
use crate::error::{Error, Result};
use crate::spectra::SpectrumReport;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Argument(format!(
                "unknown format '{other}' (expected text, csv or json)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Null,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        // drop the sign of zero
        Cell::Float(v + 0.0)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

/// Shortest round-trip text; exponent form outside [1e-5, 1e16).
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if v.is_finite() && a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Null => String::new(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(v) if v.contains([',', '"', '\n']) => {
                format!("\"{}\"", v.replace('"', "\"\""))
            }
            other => other.plain(),
        }
    }

    fn json(&self) -> String {
        let value = match self {
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Float(v) => {
                serde_json::Number::from_f64(*v).map_or(serde_json::Value::Null, Into::into)
            }
            Cell::Bool(v) => serde_json::Value::from(*v),
            Cell::Text(v) => serde_json::Value::from(v.as_str()),
            Cell::Null => serde_json::Value::Null,
        };
        value.to_string()
    }
}

/// Named columns plus rows, tagged with a schema name.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub schema: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(schema: &'static str, columns: &[&str]) -> Self {
        Self {
            schema,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn header_comment(&self) -> String {
        format!("# ws-spectra v{VERSION} schema={}", self.schema)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header_comment();
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Header record first, then one object per row with keys in column order.
    pub fn to_jsonl(&self) -> String {
        let columns: Vec<String> = self
            .columns
            .iter()
            .map(|c| serde_json::Value::from(c.as_str()).to_string())
            .collect();
        let mut out = format!(
            "{{\"format\":\"ws-spectra\",\"version\":\"{VERSION}\",\"schema\":\"{}\",\"columns\":[{}]}}\n",
            self.schema,
            columns.join(",")
        );
        for row in &self.rows {
            let fields: Vec<String> = columns
                .iter()
                .zip(row)
                .map(|(k, v)| format!("{k}:{}", v.json()))
                .collect();
            let _ = writeln!(out, "{{{}}}", fields.join(","));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::plain).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].len())
                    .chain(std::iter::once(self.columns[j].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |items: &[String]| {
            items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = self.header_comment();
        out.push('\n');
        out.push_str(line(&self.columns).trim_end());
        out.push('\n');
        for row in &cells {
            out.push_str(line(row).trim_end());
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_jsonl(),
        }
    }
}

pub const SPECTRUM_COLUMNS: [&str; 7] = [
    "n",
    "eps_re",
    "eps_im",
    "E_re",
    "E_im",
    "admissible",
    "reason",
];

pub fn spectrum_cells(report: &SpectrumReport) -> Vec<Vec<Cell>> {
    report
        .levels
        .iter()
        .map(|l| {
            vec![
                l.n.into(),
                l.epsilon.re.into(),
                l.epsilon.im.into(),
                l.energy.re.into(),
                l.energy.im.into(),
                l.admissible.into(),
                l.reason.as_str().into(),
            ]
        })
        .collect()
}

pub fn spectrum_table(report: &SpectrumReport) -> Table {
    let mut t = Table::new("spectrum", &SPECTRUM_COLUMNS);
    for row in spectrum_cells(report) {
        t.push(row);
    }
    t
}

pub fn wavefunction_table(samples: &[WavefunctionSample]) -> Table {
    let mut t = Table::new(
        "wavefunction",
        &["x", "s_re", "s_im", "psi_re", "psi_im", "abs_psi"],
    );
    for p in samples {
        t.push(vec![
            p.x.into(),
            p.s.re.into(),
            p.s.im.into(),
            p.psi.re.into(),
            p.psi.im.into(),
            p.psi.norm().into(),
        ]);
    }
    t
}

pub fn complex_cells(z: Complex64) -> [Cell; 2] {
    [z.re.into(), z.im.into()]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", &["n", "value", "note"]);
        t.push(vec![0usize.into(), 0.125.into(), "a,b".into()]);
        t.push(vec![1usize.into(), f64::NAN.into(), Cell::Null]);
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], format!("# ws-spectra v{VERSION} schema=demo"));
        assert_eq!(lines[1], "n,value,note");
        assert_eq!(lines[2], "0,0.125,\"a,b\"");
        assert_eq!(lines[3], "1,NaN,");
    }

    #[test]
    fn jsonl_layout() {
        let json = sample().to_jsonl();
        let lines: Vec<_> = json.lines().collect();
        let header: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(header["schema"], "demo");
        assert_eq!(lines[1], r#"{"n":0,"value":0.125,"note":"a,b"}"#);
        assert_eq!(lines[2], r#"{"n":1,"value":null,"note":null}"#);
    }

    #[test]
    fn text_is_aligned() {
        let text = sample().to_text();
        let lines: Vec<_> = text.lines().skip(1).collect();
        assert_eq!(lines[0].len(), lines[1].len());
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
