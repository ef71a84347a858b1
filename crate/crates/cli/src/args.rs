use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::table::Format;

#[derive(Debug, Parser, Serialize)]
#[command(name = "qudit", version, about = "Export simplex, Gell-Mann and trace-invariant datasets for diagonal qudit states")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Output file; data goes to stdout when omitted. A `<out>.meta.json`
    /// sidecar is written next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Reserved; no command draws random numbers
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Re-read the written file and check every physical row
    #[arg(long, global = true, requires = "out")]
    pub validate: bool,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Simplex vertices, edge midpoints and centre in all three spaces, or the su(n) generators
    Frame(FrameArgs),
    /// Convert points between p-space, λ-space and t-space
    Map(MapArgs),
    /// Gibbs states along a β grid
    Thermal(ThermalArgs),
    /// Thermal states of the LMG model over a coupling grid
    PhaseDiagram(PhaseArgs),
    /// Simplex edges, medians and constant-invariant curves or surfaces
    Locus(LocusArgs),
    /// Boundary of the physical qutrit region in t-space
    Boundary(BoundaryArgs),
    /// All coordinate permutations of a thermal curve
    Flower(FlowerArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct FrameArgs {
    #[arg(long)]
    pub n: usize,
    /// List the nonzero generator entries instead of the landmark points
    #[arg(long)]
    pub generators: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputSpace {
    P,
    Lambda,
}

#[derive(Debug, Args, Serialize)]
pub struct MapArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = InputSpace::P)]
    pub from: InputSpace,
    /// Comma-separated coordinates; repeat for several points
    #[arg(long = "point", required = true, allow_hyphen_values = true)]
    pub points: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// `H = ω n̂·J`, levels `ωM`
    Linear,
    /// `H = 2ω(Jz + g_x Jx² + g_y Jy²)`
    Lmg,
    /// Levels given with `--energies`
    Spectrum,
}

#[derive(Debug, Args, Serialize)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = Model::Linear)]
    pub model: Model,
    /// Spin J (half-integer)
    #[arg(long = "J", visible_alias = "spin", default_value_t = 1.0)]
    pub j: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub gx: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gy: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["gx", "gy"])]
    pub gminus: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["gx", "gy"])]
    pub gplus: Option<f64>,
    /// Comma-separated levels for `--model spectrum`, in label order
    #[arg(long, allow_hyphen_values = true)]
    pub energies: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct BetaArgs {
    /// Tokens `log:lo:hi:count`, `lin:lo:hi:count`, numbers or `inf`, comma-separated
    #[arg(long, default_value = "log:1e-3:1e3:200")]
    pub beta_grid: String,
    /// Do not add the β = 0 endpoint
    #[arg(long)]
    pub no_zero: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ThermalArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub beta: BetaArgs,
    /// Append U, S, F and ln Z columns
    #[arg(long)]
    pub thermo: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct PhaseArgs {
    #[arg(long, value_enum, default_value_t = PhaseModel::Lmg)]
    pub model: PhaseModel,
    #[arg(long = "J", visible_alias = "spin", default_value_t = 1.0)]
    pub j: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 0.25)]
    pub beta: f64,
    /// `lo:hi:count` range for g₋
    #[arg(long, allow_hyphen_values = true, default_value = "-6:6:200")]
    pub gminus: String,
    /// `lo:hi:count` range for g₊
    #[arg(long, allow_hyphen_values = true, default_value = "-6:6:200")]
    pub gplus: String,
    /// `lo:hi:count` range for g_x; with `--gy` replaces the (g₋, g₊) grid
    #[arg(long, allow_hyphen_values = true, requires = "gy")]
    pub gx: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "gx")]
    pub gy: Option<String>,
    /// Emit the separatrix curves over the g₋ range instead of the sweep
    #[arg(long)]
    pub separatrices: bool,
    /// Relative tolerance for calling two levels degenerate
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseModel {
    Lmg,
}

#[derive(Debug, Args, Serialize)]
#[group(id = "locus_kind", required = true, multiple = false)]
pub struct LocusKind {
    #[arg(long)]
    pub t2: Option<f64>,
    #[arg(long)]
    pub t3: Option<f64>,
    #[arg(long)]
    pub t4: Option<f64>,
    #[arg(long)]
    pub edges: bool,
    #[arg(long)]
    pub medians: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct LocusArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub kind: LocusKind,
    /// Points per curve
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    #[arg(long, default_value_t = 128)]
    pub theta_samples: usize,
    #[arg(long, default_value_t = 256)]
    pub phi_samples: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundaryArgs {
    /// Points per arc
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    /// Emit the images of the λ-space segments instead of the boundary arcs
    #[arg(long)]
    pub segments: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct FlowerArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub beta: BetaArgs,
}
