//! Rectangular result tables and their CSV/JSON forms.

use std::io::Write;

use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

/// `v` rounded to 15 significant digits.
pub fn round15(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

/// Shortest decimal that reads back as `round15(v)`; plain notation for
/// moderate magnitudes, scientific otherwise.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round15(v);
    let a = r.abs();
    if r == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(v) => format_number(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json_value(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Float(v) if v.is_finite() => json!(round15(*v)),
            Cell::Float(v) => json!(format_number(*v)),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }

    fn from_json_value(v: &Value) -> CliResult<Self> {
        Ok(match v {
            Value::Null => Cell::Empty,
            Value::Number(n) => match n.as_i64() {
                Some(i) if !n.is_f64() => Cell::Int(i),
                _ => Cell::Float(n.as_f64().unwrap_or(f64::NAN)),
            },
            Value::String(s) => Cell::Text(s.clone()),
            other => return Err(CliError::config("rows", format!("unexpected cell {other}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Free-form remarks carried into the JSON form.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| CliError::Output {
            path: "csv".into(),
            source: std::io::Error::other(e),
        };
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text)).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Output {
            path: "csv".into(),
            source: e,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "columns": self.columns,
            "rows": self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::json_value).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }

    pub fn from_json(v: &Value) -> CliResult<Self> {
        let bad = |what: &str| CliError::config(what, "missing or malformed");
        let columns = v["columns"]
            .as_array()
            .ok_or_else(|| bad("columns"))?
            .iter()
            .map(|c| c.as_str().map(str::to_string).ok_or_else(|| bad("columns")))
            .collect::<CliResult<Vec<_>>>()?;
        let rows = v["rows"]
            .as_array()
            .ok_or_else(|| bad("rows"))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| bad("rows"))?
                    .iter()
                    .map(Cell::from_json_value)
                    .collect()
            })
            .collect::<CliResult<Vec<_>>>()?;
        let notes = v["notes"]
            .as_array()
            .map(|a| a.iter().filter_map(|n| n.as_str().map(str::to_string)).collect())
            .unwrap_or_default();
        Ok(Table { columns, rows, notes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333333");
        assert_eq!(format_number(-2.5e-9), "-2.5e-9");
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(123456.0), "123456");
        assert_eq!(format_number(f64::INFINITY), "inf");
    }

    #[test]
    fn json_round_trip_preserves_csv() {
        let mut t = Table::new(&["n_r", "E", "method", "extra"]);
        t.push(vec![0usize.into(), (1.0f64 / 7.0).into(), "oracle".into(), Cell::Empty]);
        t.push(vec![1usize.into(), (-3.2e-12).into(), "x".into(), f64::INFINITY.into()]);
        let mut first = Vec::new();
        t.write_csv(&mut first).unwrap();
        let text = serde_json::to_string(&t.to_json()).unwrap();
        let back = Table::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        let mut second = Vec::new();
        back.write_csv(&mut second).unwrap();
        assert_eq!(String::from_utf8(first).unwrap(), String::from_utf8(second).unwrap());
    }
}
