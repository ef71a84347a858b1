//! Command-line exporter for qudit simplex geometry datasets.

pub mod args;
pub mod commands;
pub mod error;
pub mod grid;
pub mod table;
pub mod validate;

use std::path::{Path, PathBuf};

use serde_json::json;

use crate::args::{Cli, Command};
use crate::error::{CliError, CliResult};
use crate::table::{write_atomic, Dataset};
use crate::validate::{validate_file, ValidationReport};

/// What a successful run produced.
#[derive(Debug)]
pub struct Outcome {
    pub dataset: Dataset,
    /// Rendered data, already written when `--out` was given.
    pub bytes: Vec<u8>,
    pub meta: serde_json::Value,
    pub validation: Option<ValidationReport>,
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Frame(_) => "frame",
        Command::Map(_) => "map",
        Command::Thermal(_) => "thermal",
        Command::PhaseDiagram(_) => "phase-diagram",
        Command::Locus(_) => "locus",
        Command::Boundary(_) => "boundary",
        Command::Flower(_) => "flower",
    }
}

pub fn build(cli: &Cli) -> CliResult<Dataset> {
    match &cli.command {
        Command::Frame(a) => commands::frame(a),
        Command::Map(a) => commands::map(a),
        Command::Thermal(a) => commands::thermal(a),
        Command::PhaseDiagram(a) => commands::phase_diagram(a),
        Command::Locus(a) => commands::locus(a),
        Command::Boundary(a) => commands::boundary(a),
        Command::Flower(a) => commands::flower(a),
    }
}

pub fn meta_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn metadata(cli: &Cli, ds: &Dataset) -> serde_json::Value {
    let physical = ds.physical_rows();
    json!({
        "tool": "qudit",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command_name(&cli.command),
        "config": cli,
        "columns": ds.columns,
        "rows": ds.rows.len(),
        "physical_rows": physical,
        "masked_rows": ds.rows.len() - physical,
        "failed_nodes": ds.failed,
        "discrepancies": ds.discrepancies,
    })
}

/// Computes the dataset, writes it (and its sidecar) if `--out` is set, and
/// optionally validates the written file.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let dataset = build(cli)?;
    if !dataset.rows.is_empty() && dataset.failed == dataset.rows.len() {
        return Err(CliError::Numerical(format!("all {} nodes failed", dataset.rows.len())));
    }
    let bytes = dataset.render(cli.output.format)?;
    let meta = metadata(cli, &dataset);
    let mut validation = None;
    if let Some(out) = &cli.output.out {
        write_atomic(out, &bytes)?;
        let mut m = serde_json::to_vec_pretty(&meta)?;
        m.push(b'\n');
        write_atomic(&meta_path(out), &m)?;
        if cli.output.validate {
            let report = validate_file(out, cli.output.format, &dataset.columns)?;
            if !report.ok() {
                return Err(CliError::Numerical(format!(
                    "validation failed: {} problem(s), first: {}",
                    report.problems.len(),
                    report.problems[0]
                )));
            }
            validation = Some(report);
        }
    }
    Ok(Outcome { dataset, bytes, meta, validation })
}
