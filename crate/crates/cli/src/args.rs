use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypermds::{LineSearchParams, Objective, SolverParams};

#[derive(Debug, Parser)]
#[command(
    name = "hypermds",
    version,
    about = "Metric MDS into the Poincaré disk"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embed a dissimilarity matrix at one scaling factor.
    Embed(EmbedArgs),
    /// Best embedding error over a log-spaced grid of scaling factors.
    Sweep(SweepArgs),
    /// Generate a synthetic dissimilarity matrix.
    Synth(SynthArgs),
    /// Convert an edge list into a dissimilarity matrix.
    Graph(GraphArgs),
    /// Build a Euclidean dissimilarity matrix from a numeric feature table.
    Features(FeaturesArgs),
    /// Disk sweep against the Euclidean-plane baseline.
    Compare(CompareArgs),
    /// Render an SVG figure.
    Plot(PlotArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ErrorKind {
    Ads,
    Rds,
    Sam,
}

impl From<ErrorKind> for Objective {
    fn from(kind: ErrorKind) -> Self {
        match kind {
            ErrorKind::Ads => Objective::Ads,
            ErrorKind::Rds => Objective::Rds,
            ErrorKind::Sam => Objective::Sam,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Dissimilarity matrix (CSV, blank or NaN = missing).
    #[arg(long)]
    pub input: PathBuf,
    /// Weight matrix with the same shape as the input.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "sam")]
    pub error: ErrorKind,
    /// Divide the error by the number of pairs.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 1e-6)]
    pub eps_e: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub eps_de: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub eps_g: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub eps_r: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_iter: usize,
    /// Largest hyperbolic distance a point may travel per iteration.
    #[arg(long, default_value_t = 10.0)]
    pub s_max: f64,
    /// Slope factor of the acceptance line.
    #[arg(long, default_value_t = 0.1)]
    pub p: f64,
    /// First trial step.
    #[arg(long, default_value_t = 1.0)]
    pub r0: f64,
    /// Seed for the random starts; drawn from entropy when absent.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl SolverArgs {
    pub fn params(&self) -> SolverParams {
        SolverParams {
            eps_error: self.eps_e,
            eps_progress: self.eps_de,
            eps_gradient: self.eps_g,
            eps_window: self.eps_r,
            max_iter: self.max_iter,
            s_max: self.s_max,
            linesearch: LineSearchParams {
                p: self.p,
                r0: self.r0,
            },
            record_path: false,
        }
    }
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.01)]
    pub scale_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub scale_max: f64,
    #[arg(long, default_value_t = 40)]
    pub scale_steps: usize,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Dissimilarity scaling factor `a`.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub scale: f64,
    #[arg(long, default_value_t = 20)]
    pub replicates: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out_config: PathBuf,
    #[arg(long)]
    pub out_trace: PathBuf,
    /// Per-replicate summary; defaults to `<out-config stem>_replicates.csv`.
    #[arg(long)]
    pub out_summary: Option<PathBuf>,
    /// Configurations visited by the best run, for trajectory plots.
    #[arg(long)]
    pub out_path: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = 70)]
    pub replicates: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SurfaceKind {
    Euclidean,
    Spherical,
    Hyperbolic,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum)]
    pub kind: SurfaceKind,
    #[arg(long)]
    pub n: usize,
    /// Relative noise level in [0, 1).
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    /// Sphere radius (spherical only).
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
    /// Generator points of a hyperbolic set, as a configuration file.
    #[arg(long)]
    pub out_points: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Binary,
    ConstMinusWeight,
    ShortestPath,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge list: `u v [weight]` per line, `#` comments.
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Keep only the largest connected component.
    #[arg(long)]
    pub largest_component: bool,
    #[arg(long)]
    pub out: PathBuf,
    /// `index,node_id` rows for the matrix rows.
    #[arg(long)]
    pub out_mapping: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    /// Numeric table, one object per row; a non-numeric first line is a header.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = 70)]
    pub replicates: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Points in the disk; a path file adds trajectories.
    Disk,
    /// Sweep curve with a logarithmic scale axis.
    Curve,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(value_enum)]
    pub figure: Figure,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}
