//! Column-oriented datasets and their CSV/JSON serialisations.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    I(i64),
    S(String),
}

impl Cell {
    /// Shortest round-trip decimal for floats.
    pub fn to_csv(&self) -> String {
        match self {
            Cell::F(x) => format!("{x:?}"),
            Cell::I(i) => i.to_string(),
            Cell::S(s) => s.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::F(x) if x.is_infinite() => Value::from(if *x > 0.0 { "inf" } else { "-inf" }),
            Cell::F(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::I(i) => Value::from(*i),
            Cell::S(s) => Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::F(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::I(b as i64)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::S(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::S(s.to_string())
    }
}

/// A printed closed form that disagrees with the computed values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub item: String,
    pub printed: String,
    pub used: String,
    pub max_abs_deviation: f64,
}

/// A table plus what the metadata sidecar reports about it.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Rows whose computation failed and were written as masked NaN rows.
    pub failed: usize,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Dataset {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, rows: Vec::new(), failed: 0, discrepancies: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn physical_index(&self) -> Option<usize> {
        self.columns.iter().position(|c| c == "physical")
    }

    pub fn physical_rows(&self) -> usize {
        let Some(i) = self.physical_index() else { return 0 };
        self.rows.iter().filter(|r| r[i] == Cell::I(1)).count()
    }

    pub fn to_csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv))?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn to_json(&self) -> CliResult<Vec<u8>> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect();
                Value::Object(obj)
            })
            .collect();
        let mut out = serde_json::to_vec_pretty(&rows)?;
        out.push(b'\n');
        Ok(out)
    }

    pub fn render(&self, format: Format) -> CliResult<Vec<u8>> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Writes through a temporary sibling and renames, so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::Io(format!("{}: {e}", path.display())));
    }
    Ok(())
}

/// `p1..pn`, the diagonal-generator labels `l{n²-n+ℓ}`, and `t2..tn`.
pub fn space_columns(n: usize) -> (Vec<String>, Vec<String>, Vec<String>) {
    let p = (1..=n).map(|i| format!("p{i}")).collect();
    let l = (1..n).map(|l| format!("l{}", n * n - n + l)).collect();
    let t = (2..=n).map(|l| format!("t{l}")).collect();
    (p, l, t)
}
