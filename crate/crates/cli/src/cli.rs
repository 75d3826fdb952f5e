//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use record_aging::numerics::{GridSpec, Spacing};

#[derive(Debug, Parser)]
#[command(name = "record-aging", version)]
#[command(about = "Aging-faster orders of record values: checks, theorem verification, worked examples, simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stochastic order checks between two base distributions
    Order {
        #[command(subcommand)]
        action: OrderCommand,
    },
    /// Sample a record-value curve on a grid
    Record(RecordArgs),
    /// Check a theorem's hypotheses and conclusion for a pair of laws
    Theorem {
        #[command(subcommand)]
        action: TheoremCommand,
    },
    /// Worked examples with their curves and reports
    Example {
        #[command(subcommand)]
        action: ExampleCommand,
    },
    /// Monte Carlo record values
    Simulate {
        #[command(subcommand)]
        action: SimulateCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrderCommand {
    /// Test `X <= Y` in the chosen order (or an aging class of X alone)
    Check(OrderCheckArgs),
}

#[derive(Debug, Subcommand)]
pub enum TheoremCommand {
    /// Evaluate one theorem on base laws X and Y with record indices m and n
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum ExampleCommand {
    /// Write an example's curves as CSV and its report as JSON
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Subcommand)]
pub enum SimulateCommand {
    /// Draw i.i.d. copies of the n-th record value
    Records(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    /// Usual stochastic order: sf_X <= sf_Y
    St,
    /// Hazard rate order: h_X >= h_Y
    Hr,
    /// Reversed hazard rate order: r_X <= r_Y
    Rh,
    /// X ages faster in hazard rate: h_X/h_Y non-decreasing
    C,
    /// X ages faster in reversed hazard rate: r_X/r_Y non-increasing
    B,
    /// X has a non-decreasing hazard rate (no Y)
    Ifr,
    /// X has a non-increasing reversed hazard rate (no Y)
    Drhr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Hazard,
    Rhr,
    Pdf,
    Sf,
    Cdf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Gamma,
    Scan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleArg {
    Erlang,
    LomaxUpper,
    InvweibullB,
    InvweibullThm4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextOrJson {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CsvOrJson {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OrderCheckArgs {
    #[arg(long, value_enum)]
    pub order: OrderArg,
    /// Distribution X, e.g. `lomax:shape=3,scale=1`
    pub x: String,
    /// Distribution Y (omitted for ifr and drhr)
    pub y: Option<String>,
    /// Evaluation grid `lo:hi:count[:log|linear]`, cut to the effective support
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<GridSpec>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: TextOrJson,
}

#[derive(Debug, Args)]
pub struct RecordArgs {
    #[arg(value_enum)]
    pub quantity: Quantity,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Record index
    #[arg(short = 'n', default_value_t = 1)]
    pub n: usize,
    /// Base distribution, e.g. `exp:rate=3`
    pub dist: String,
    /// Evaluation grid `lo:hi:count[:log|linear]`, cut to the effective support
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<GridSpec>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: CsvOrJson,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Theorem number, 1 to 4
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub id: u8,
    /// Record index of X
    #[arg(short = 'm')]
    pub m: usize,
    /// Record index of Y
    #[arg(short = 'n')]
    pub n: usize,
    pub x: String,
    pub y: String,
    /// Evaluation grid `lo:hi:count[:log|linear]`, cut to the effective support
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<GridSpec>,
    /// Coarse grid size of the supremum search
    #[arg(long)]
    pub sup_grid_points: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: TextOrJson,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_enum)]
    pub id: ExampleArg,
    /// Directory receiving `<id>-<curve>.csv` and `<id>-report.json`
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Record index
    #[arg(short = 'n', default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "gamma")]
    pub method: MethodArg,
    /// Base distribution, e.g. `lomax:shape=3,scale=1`
    pub dist: String,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `lo:hi:count[:log|linear]`.
pub fn parse_grid(text: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err("expected lo:hi:count[:log|linear]".into());
    }
    let lo: f64 = parts[0].parse().map_err(|_| format!("bad lower bound `{}`", parts[0]))?;
    let hi: f64 = parts[1].parse().map_err(|_| format!("bad upper bound `{}`", parts[1]))?;
    let count: usize = parts[2].parse().map_err(|_| format!("bad point count `{}`", parts[2]))?;
    let spacing = match parts.get(3) {
        None | Some(&"log") => Spacing::Log,
        Some(&"linear") => Spacing::Linear,
        Some(other) => return Err(format!("unknown spacing `{other}` (log or linear)")),
    };
    GridSpec::new(lo, hi, count, spacing).map_err(|e| e.to_string())
}
