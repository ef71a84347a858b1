//! Re-reads a written dataset and checks its physical rows.

use std::collections::HashMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use qudit_core::states::{power_sums, DiagonalMap};

use crate::error::{CliError, CliResult};
use crate::table::Format;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub rows: usize,
    pub physical_rows: usize,
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

type Record = HashMap<String, Option<f64>>;

fn read(path: &Path, format: Format) -> CliResult<(Vec<String>, Vec<Record>)> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    match format {
        Format::Csv => {
            let mut r = csv::Reader::from_reader(bytes.as_slice());
            let cols: Vec<String> = r.headers()?.iter().map(String::from).collect();
            let mut rows = Vec::new();
            for rec in r.records() {
                let rec = rec?;
                rows.push(cols.iter().cloned().zip(rec.iter().map(|s| s.parse::<f64>().ok())).collect());
            }
            Ok((cols, rows))
        }
        Format::Json => {
            let v: Value = serde_json::from_slice(&bytes)?;
            let arr = v.as_array().ok_or_else(|| CliError::Io("JSON output is not an array".into()))?;
            let cols: Vec<String> = arr.first().and_then(Value::as_object).map(|o| o.keys().cloned().collect()).unwrap_or_default();
            let rows = arr
                .iter()
                .map(|o| {
                    o.as_object()
                        .map(|m| m.iter().map(|(k, v)| (k.clone(), v.as_f64().or_else(|| v.as_str().and_then(|s| s.parse().ok())))).collect())
                        .unwrap_or_default()
                })
                .collect();
            Ok((cols, rows))
        }
    }
}

fn indexed(cols: &[String], prefix: char) -> Vec<String> {
    cols.iter()
        .filter(|c| c.starts_with(prefix) && c.len() > 1 && c[1..].chars().all(|ch| ch.is_ascii_digit()))
        .cloned()
        .collect()
}

/// Checks the header against `expected` and, for rows flagged physical, that
/// p is a probability vector and the λ and t columns agree with it.
pub fn validate_file(path: &Path, format: Format, expected: &[String]) -> CliResult<ValidationReport> {
    let (cols, rows) = read(path, format)?;
    let mut problems = Vec::new();
    if !rows.is_empty() && cols != expected {
        problems.push(format!("header {cols:?} does not match schema {expected:?}"));
    }
    let p_cols = indexed(&cols, 'p');
    let l_cols = indexed(&cols, 'l');
    let t_cols = indexed(&cols, 't');
    let has_physical = cols.iter().any(|c| c == "physical");
    let map = if p_cols.len() >= 2 { DiagonalMap::new(p_cols.len()).ok() } else { None };
    let mut physical_rows = 0;
    for (i, rec) in rows.iter().enumerate() {
        if !has_physical || rec.get("physical").copied().flatten() != Some(1.0) {
            continue;
        }
        physical_rows += 1;
        let Some(map) = &map else { continue };
        let p: Option<Vec<f64>> = p_cols.iter().map(|c| rec.get(c).copied().flatten()).collect();
        let Some(p) = p else {
            problems.push(format!("row {}: physical row has missing p values", i + 1));
            continue;
        };
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-12 || p.iter().any(|&x| x < -1e-12) {
            problems.push(format!("row {}: p = {p:?} is not a probability vector", i + 1));
        }
        let check = |names: &[String], want: Vec<f64>, tol: f64, what: &str, problems: &mut Vec<String>| {
            if names.len() != want.len() {
                return;
            }
            for (c, w) in names.iter().zip(want) {
                match rec.get(c).copied().flatten() {
                    Some(v) if (v - w).abs() <= tol => {}
                    v => problems.push(format!("row {}: {what} column {c} = {v:?}, expected {w}", i + 1)),
                }
            }
        };
        check(&l_cols, map.raw_p_to_lambda(&p), 1e-12, "λ", &mut problems);
        check(&t_cols, power_sums(&p), 1e-9, "t", &mut problems);
    }
    Ok(ValidationReport { rows: rows.len(), physical_rows, problems })
}
