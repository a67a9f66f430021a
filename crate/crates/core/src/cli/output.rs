//! Row writers. Rows are flat JSON objects; CSV cells hold nested values as
//! compact JSON.

use std::io::Write;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    /// Whitespace-separated tetrahedral table layout (`tetra regulators` only).
    Table,
}

/// Everything a command produces: rows plus run-level extras for JSON.
#[derive(Debug, Default)]
pub struct Report {
    pub rows: Vec<Map<String, Value>>,
    pub extras: Map<String, Value>,
    /// Pre-rendered lines for `--format table`.
    pub table: Option<Vec<String>>,
    /// Rows that failed but did not stop the run.
    pub failures: usize,
}

impl Report {
    pub fn push(&mut self, row: Value) {
        match row {
            Value::Object(m) => self.rows.push(m),
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                self.rows.push(m);
            }
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        _ => serde_json::to_string(v).unwrap(),
    }
}

/// Column order is first appearance across rows.
fn columns(rows: &[Map<String, Value>]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

pub fn write_csv(out: &mut dyn Write, rows: &[Map<String, Value>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let cols = columns(rows);
    let io = |e: csv::Error| Error::Io(e.to_string());
    if !cols.is_empty() {
        w.write_record(&cols).map_err(io)?;
    }
    for r in rows {
        w.write_record(cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()))
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json(out: &mut dyn Write, doc: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)?;
    Ok(())
}

/// Sets every timing field to zero, recursively.
pub fn zero_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            for (k, x) in m.iter_mut() {
                if k == "seconds" || k == "wall_seconds" {
                    *x = Value::from(0.0);
                } else {
                    zero_timings(x);
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(zero_timings),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_flattens_nested_cells() {
        let mut r = Report::default();
        r.push(json!({"a": 1, "b": "x,y", "c": [1, 2]}));
        r.push(json!({"a": 2, "d": null}));
        let mut buf = Vec::new();
        write_csv(&mut buf, &r.rows).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "a,b,c,d\n1,\"x,y\",\"[1,2]\",\n2,,,\n");
    }

    #[test]
    fn timings_are_zeroed() {
        let mut v = json!({"seconds": 1.5, "rows": [{"wall_seconds": 2.0, "n": 3}]});
        zero_timings(&mut v);
        assert_eq!(
            v,
            json!({"seconds": 0.0, "rows": [{"wall_seconds": 0.0, "n": 3}]})
        );
    }
}
