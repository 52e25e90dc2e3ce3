use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "matchamg", version, about = "Matching-based aggregation AMG with flexible PCG")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the hierarchy, solve with PCG and report setup/solve figures.
    Solve(SolveArgs),
    /// Time the SpMV lane-group policies and the fused PCG kernels.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// MatrixMarket coordinate file.
    #[arg(long, value_name = "PATH")]
    pub matrix: Option<PathBuf>,
    /// Generated problem: `ani:NX,NY,EPS,THETA`, `poisson2d:NX,NY`,
    /// `poisson1d:N` or `randk:NX,NY,NZ,SIGMA`. THETA accepts `pi/K`.
    #[arg(long = "gen", value_name = "SPEC")]
    pub generator: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_enum, default_value_t = OutFormat::Table)]
    pub out: OutFormat,
    /// Worker threads for the parallel kernels (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Seed for generated permeability fields and random vectors.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = CycleArg::V)]
    pub cycle: CycleArg,
    #[arg(long, default_value_t = 1)]
    pub pre: usize,
    #[arg(long, default_value_t = 1)]
    pub post: usize,
    #[arg(long, default_value_t = 20)]
    pub coarsest_sweeps: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub rtol: f64,
    #[arg(long, default_value_t = 5000)]
    pub itmax: usize,
    #[arg(long, default_value_t = 40)]
    pub max_levels: usize,
    /// Coarsest size bound is this factor times n^(1/3).
    #[arg(long, default_value_t = 40.0)]
    pub coarse_factor: f64,
    #[arg(long, value_enum, default_value_t = AggArg::Double)]
    pub agg: AggArg,
    /// Smooth vector for the matching weights: `ones` or a file of
    /// whitespace-separated values.
    #[arg(long, default_value = "ones")]
    pub wvec: String,
    /// Write the residual history as CSV.
    #[arg(long, value_name = "PATH")]
    pub history: Option<PathBuf>,
    /// Write the solution vector, one value per line.
    #[arg(long, value_name = "PATH")]
    pub save: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub common: Common,
    /// Timed repetitions per kernel; the median is reported.
    #[arg(long, default_value_t = 9)]
    pub reps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CycleArg {
    V,
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AggArg {
    Pair,
    Double,
}
