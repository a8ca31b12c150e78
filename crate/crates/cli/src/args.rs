//! Command-line surface.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "ddi",
    version,
    about = "Infer qubit measurements from bare outcome statistics",
    long_about = "Infers the minimum-volume measurement range compatible with observed \
                  outcome frequencies, inverts ranges into canonical measurements, \
                  certifies completeness of probe-state sets, and simulates data."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Infer the minimum-volume range compatible with a frequency table
    Infer(InferArgs),
    /// Infer a range and invert it into a canonical-gauge measurement
    Reconstruct(ReconstructArgs),
    /// Sample outcome frequencies of a measurement over probe states
    Simulate(SimulateArgs),
    /// Certify informational/observational completeness of a state set
    Check(CheckArgs),
    /// Decide whether two measurements share the same range
    Equiv(EquivArgs),
    /// Exhibit non-uniqueness of minimum-area enclosing triangles
    DemoNonunique(DemoArgs),
}

#[derive(Args)]
pub struct InferArgs {
    /// Frequency table CSV (rows = inputs, columns = outcomes); `-` reads stdin
    pub table: String,
    /// Largest tolerated |row sum - 1|
    #[arg(long, default_value_t = 1e-6)]
    pub row_tol: f64,
    /// Rescale every row to unit sum instead of rejecting
    #[arg(long)]
    pub renormalize: bool,
    /// Duality-gap tolerance of the enclosing-ellipsoid solver
    #[arg(long, default_value_t = 1e-9)]
    pub eps: f64,
    /// Affine-hull membership tolerance
    #[arg(long, default_value_t = 1e-7)]
    pub affine_tol: f64,
    /// Write the JSON report here instead of stdout
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Write a static SVG of the reduced data and inferred ellipse
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Args)]
pub struct ReconstructArgs {
    /// Frequency table CSV; `-` reads stdin (omit when using --from-range)
    pub table: Option<String>,
    /// Invert the ellipsoid of a previously saved inference report
    #[arg(long, conflicts_with = "table")]
    pub from_range: Option<String>,
    /// Validity tolerance of the recovered measurement (noisy data needs ~0.02)
    #[arg(long, default_value_t = 0.02)]
    pub povm_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub row_tol: f64,
    #[arg(long)]
    pub renormalize: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub eps: f64,
    #[arg(long, default_value_t = 1e-7)]
    pub affine_tol: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Args)]
pub struct SimulateArgs {
    /// Measurement JSON: {"effects": [{"a": .., "b": [..,..,..]}]}
    pub povm: String,
    /// Probe states JSON: {"bloch": [[..,..,..], ...]}
    pub states: String,
    /// Shots per probe state; 0 emits the exact outcome probabilities
    #[arg(long)]
    pub shots: u64,
    /// PRNG seed (falls back to the DDI_SEED environment variable)
    #[arg(long, env = "DDI_SEED")]
    pub seed: u64,
    /// Also write the raw counts CSV here
    #[arg(long)]
    pub counts: Option<PathBuf>,
    /// Validation tolerance for the measurement file
    #[arg(long, default_value_t = 0.02)]
    pub povm_tol: f64,
    /// Write the frequency CSV here instead of stdout
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    /// Observational completeness: the enclosing ellipsoid is the Bloch ball
    Oc,
    /// Informational completeness: the states affinely span Bloch space
    Ic,
    /// Observational completeness on a subspace (requires --projector)
    OcSupport,
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckMode::Oc => "oc",
            CheckMode::Ic => "ic",
            CheckMode::OcSupport => "oc-support",
        };
        f.write_str(s)
    }
}

#[derive(Args)]
pub struct CheckArgs {
    /// Probe states JSON: {"bloch": [[..,..,..], ...]}
    pub states: String,
    #[arg(long, value_enum)]
    pub mode: CheckMode,
    /// Projector JSON for oc-support: {"P": [[..],[..],[..]]}
    #[arg(long)]
    pub projector: Option<String>,
    /// Verdict tolerance on (Q, t)
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct EquivArgs {
    /// First measurement JSON
    pub first: String,
    /// Second measurement JSON
    pub second: String,
    /// Equivalence tolerance on (Q, t)
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Validation tolerance for the measurement files
    #[arg(long, default_value_t = 0.02)]
    pub povm_tol: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct DemoArgs {
    /// 2D points CSV (two columns); `-` reads stdin
    pub points: Option<String>,
    /// Use the regular hexagon with circumradius 1
    #[arg(long, conflicts_with = "points")]
    pub hexagon: bool,
    /// Area tolerance for co-optimal triangles
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
