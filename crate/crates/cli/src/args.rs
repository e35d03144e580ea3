use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genhermite::Grid;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "genhermite", version, about = "Generalized Hermite functions and factorization identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print H_n^δ(x)
    Eval(EvalArgs),
    /// Tabulate H_n^δ and its first two derivatives over a grid
    Table(TableArgs),
    /// Export the data behind the H_n^δ figure (n = 0..=3, several δ)
    Figure(FigureArgs),
    /// Run the identity suite and report residuals against tolerances
    Verify(VerifyArgs),
    /// Export Mielnik's partner potential and states, and its discretized spectrum
    Partner(PartnerArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub xmax: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

impl GridArgs {
    pub fn resolve(&self, default: (f64, f64, usize)) -> Result<Grid, CliError> {
        Ok(Grid::new(
            self.xmin.unwrap_or(default.0),
            self.xmax.unwrap_or(default.1),
            self.points.unwrap_or(default.2),
        )?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub delta: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub delta: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// Highest index n
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Deformation parameters, repeatable [default: 0 1 10 100]
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Vec<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

pub const FIGURE_DELTAS: [f64; 4] = [0.0, 1.0, 10.0, 100.0];
pub const FIGURE_GRID: (f64, f64, usize) = (-5.0, 5.0, 501);

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Highest index n
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Deformation parameters, repeatable [default: 0 1 100 1e6]
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Vec<f64>,
    /// Mielnik parameters, repeatable [default: 2]
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Vec<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Multiply every tolerance by this factor
    #[arg(long, default_value_t = 1.0)]
    pub tolerance_scale: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct PartnerArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    pub gamma: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Half width of the Dirichlet box for the spectrum
    #[arg(long, default_value_t = 12.0)]
    pub box_half_width: f64,
    /// Interior points of the spectrum discretization
    #[arg(long, default_value_t = 2400)]
    pub box_points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

pub const PARTNER_GRID: (f64, f64, usize) = (-5.0, 5.0, 501);
