use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwalk_core::circuit::Design;
use qwalk_core::noise::NoiseModel;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about = "Approximate quantum counting walks: simulation and analysis")]
pub struct Cli {
    /// Read default flag values from a `key=value` file; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mean distance per step count for each design.
    #[command(args_override_self = true)]
    DistanceTable(DistanceTableArgs),
    /// Position histogram of one design, optionally as a two-way walk.
    #[command(args_override_self = true)]
    WalkHist(WalkHistArgs),
    /// Arc counter under periodic mid-circuit measurement.
    #[command(args_override_self = true)]
    Zeno(ZenoArgs),
    /// Circuit fidelity estimate from a gate census.
    #[command(args_override_self = true)]
    Fidelity(FidelityArgs),
    /// Price-change and housing-correlation analyses.
    #[command(subcommand)]
    Market(MarketCommand),
    /// Write a walk circuit in the line-based text format.
    #[command(args_override_self = true)]
    EmitCircuit(EmitCircuitArgs),
}

pub fn parse_design(s: &str) -> Result<Design, String> {
    s.parse::<Design>().map_err(|e| e.to_string())
}

fn parse_design_list(s: &str) -> Result<DesignList, String> {
    let designs = s
        .split(',')
        .map(str::trim)
        .filter(|d| !d.is_empty())
        .map(parse_design)
        .collect::<Result<Vec<_>, _>>()?;
    if designs.is_empty() {
        return Err("no designs given".into());
    }
    Ok(DesignList(designs))
}

fn parse_periods(s: &str) -> Result<PeriodList, String> {
    let periods = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad period {p:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PeriodList(periods))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DesignList(pub Vec<Design>);

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PeriodList(pub Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoisePreset {
    Ideal,
    Default,
    HighEnd,
    Custom,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NoiseArgs {
    /// Gate-noise preset; the fidelity flags override individual values.
    #[arg(long, value_enum, default_value_t = NoisePreset::Ideal)]
    pub noise: NoisePreset,
    #[arg(long = "fidelity-1q")]
    pub fidelity_1q: Option<f64>,
    #[arg(long = "fidelity-2q")]
    pub fidelity_2q: Option<f64>,
    /// Per-bit flip probability on the final readout.
    #[arg(long)]
    pub readout_flip: Option<f64>,
}

impl NoiseArgs {
    pub fn model(&self) -> Result<NoiseModel, CliError> {
        let base = match self.noise {
            NoisePreset::Ideal | NoisePreset::Custom => NoiseModel::ideal(),
            NoisePreset::Default => NoiseModel::nisq_default(),
            NoisePreset::HighEnd => NoiseModel::high_end(),
        };
        Ok(NoiseModel::new(
            self.fidelity_1q.unwrap_or(base.fidelity_1q()),
            self.fidelity_2q.unwrap_or(base.fidelity_2q()),
            self.readout_flip.unwrap_or(base.readout_flip()),
        )?)
    }

    /// `None` when the resolved model cannot inject any error.
    pub fn active_model(&self) -> Result<Option<NoiseModel>, CliError> {
        let m = self.model()?;
        Ok((!m.is_ideal()).then_some(m))
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SeedArg {
    #[arg(long, env = "QWALK_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RandomJumpArgs {
    /// Seeded circuits pooled per random-jump cell.
    #[arg(long, default_value_t = qwalk_core::walk::RANDOM_CIRCUITS)]
    pub random_circuits: usize,
    /// Shots per random-jump circuit.
    #[arg(long, default_value_t = qwalk_core::walk::RANDOM_CIRCUIT_SHOTS)]
    pub random_shots: usize,
    /// Reset the coin before each toss instead of keeping it coherent.
    #[arg(long)]
    pub coin_reset: bool,
    /// Apply gate noise to the cascading design as well.
    #[arg(long)]
    pub noisy_cascading: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableFormat {
    /// One row per step count, one column per design.
    Wide,
    /// `steps,design,mean,stderr,shots` rows.
    Long,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DistanceTableArgs {
    #[arg(long, value_parser = parse_design_list, default_value = "binary,arc,arc_walk,random_jump,random_jump_cascading")]
    pub designs: DesignList,
    #[arg(long, default_value_t = 6)]
    pub width: usize,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, default_value_t = qwalk_core::walk::DEFAULT_SHOTS)]
    pub shots: usize,
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub base_angle: f64,
    #[command(flatten)]
    pub random: RandomJumpArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, value_enum, default_value_t = TableFormat::Wide)]
    pub format: TableFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HistFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WalkHistArgs {
    #[arg(long, value_parser = parse_design, default_value = "arc")]
    pub design: Design,
    #[arg(long, default_value_t = 8)]
    pub width: usize,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, default_value_t = qwalk_core::walk::DEFAULT_SHOTS)]
    pub shots: usize,
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub base_angle: f64,
    /// Subtract an independent walk in the other direction.
    #[arg(long)]
    pub two_way: bool,
    /// Base angle of the downward walk (defaults to `--base-angle`).
    #[arg(long)]
    pub down_angle: Option<f64>,
    /// Measure the counter after every N-th step (0 = never).
    #[arg(long, default_value_t = 0)]
    pub period: usize,
    #[command(flatten)]
    pub random: RandomJumpArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, value_enum, default_value_t = HistFormat::Csv)]
    pub format: HistFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZenoArgs {
    #[arg(long, default_value_t = 8)]
    pub width: usize,
    #[arg(long, default_value_t = 20)]
    pub steps: usize,
    /// Measurement periods to compare; 0 means never measured.
    #[arg(long, value_parser = parse_periods, default_value = "0,7,1")]
    pub periods: PeriodList,
    #[arg(long, default_value_t = qwalk_core::walk::DEFAULT_SHOTS)]
    pub shots: usize,
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub base_angle: f64,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FidelityArgs {
    /// Count gates in a circuit text file.
    #[arg(long, conflicts_with_all = ["count_1q", "count_2q"])]
    pub census_from: Option<PathBuf>,
    #[arg(long = "count-1q", default_value_t = 0)]
    pub count_1q: u64,
    #[arg(long = "count-2q", default_value_t = 0)]
    pub count_2q: u64,
    #[arg(long = "fidelity-1q", default_value_t = 0.997)]
    pub fidelity_1q: f64,
    #[arg(long = "fidelity-2q", default_value_t = 0.978)]
    pub fidelity_2q: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum MarketCommand {
    /// Relative daily changes of a `date,close` series.
    #[command(args_override_self = true)]
    Returns(ReturnsArgs),
    /// Per-metro sales versus sale-to-list correlations.
    #[command(args_override_self = true)]
    Housing(HousingArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReturnsArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 40)]
    pub bins: usize,
    #[arg(long, default_value = "date")]
    pub date_column: String,
    #[arg(long, default_value = "close")]
    pub close_column: String,
    #[arg(long, default_value = "%Y-%m-%d")]
    pub date_format: String,
    #[arg(long, value_enum, default_value_t = HistFormat::Csv)]
    pub format: HistFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HousingArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = qwalk_core::market::DEFAULT_R_BINS)]
    pub bins: usize,
    /// Per-metro `metro,r,months_used` CSV (standard output if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Full JSON report with the r histogram and skipped metros.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EmitCircuitArgs {
    #[arg(long, value_parser = parse_design)]
    pub design: Design,
    #[arg(long, default_value_t = 6)]
    pub width: usize,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub base_angle: f64,
    #[arg(long)]
    pub coin_reset: bool,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
