use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{invalid, validation, Result};
use crate::hypothesis::{make_pair, DecisionRule, HypothesisLabel, HypothesisPair, IntervalHypothesis, Scale};
use crate::posterior::{BetaPrior, NormalPrior, DEFAULT_DRAWS};

#[derive(Debug, Parser)]
#[command(name = "twoit", version, about = "Bayesian two-interval hypothesis test")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One proportion, exact Beta posterior.
    TestProp(TestPropArgs),
    /// Difference of two proportions, Monte Carlo.
    TestTwoProp(TestTwoPropArgs),
    /// One normal mean from summary statistics, exact Student-t posterior.
    TestMean(TestMeanArgs),
    /// Difference of two normal means, Monte Carlo.
    TestMeanDiff(TestMeanDiffArgs),
    /// Risk ratio or odds ratio of two proportions, Monte Carlo.
    TestRatio(TestRatioArgs),
    /// Ratio measure from a published estimate and confidence interval.
    TestSummaryRatio(TestSummaryRatioArgs),
    /// Operating characteristics from a TOML configuration.
    SimulateOc(SimulateArgs),
    /// Selection-bias tables for the normal mean from a TOML configuration.
    SimulateBias(SimulateArgs),
    /// Recompute the worked examples and reference tables.
    Replicate(ReplicateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Threshold,
    Cri,
}

impl From<RuleArg> for DecisionRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Threshold => DecisionRule::ProbabilityThreshold,
            RuleArg::Cri => DecisionRule::CriInclusion,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// Bounds of H_P.
    #[arg(long, num_args = 2, value_names = ["LOWER", "UPPER"], allow_negative_numbers = true)]
    pub hp: Option<Vec<f64>>,
    /// Bounds of H_A.
    #[arg(long, num_args = 2, value_names = ["LOWER", "UPPER"], allow_negative_numbers = true)]
    pub ha: Option<Vec<f64>>,
    /// H_P covers the values outside its bounds.
    #[arg(long)]
    pub hp_outside: bool,
    /// H_A covers the values outside its bounds.
    #[arg(long)]
    pub ha_outside: bool,
    /// Acceptance threshold π.
    #[arg(long, default_value_t = 0.95, allow_negative_numbers = true)]
    pub pi: f64,
    #[arg(long, value_enum, default_value_t = RuleArg::Threshold)]
    pub rule: RuleArg,
    #[arg(long, default_value_t = 0.95)]
    pub cri_level: f64,
}

impl PairArgs {
    pub fn build(&self, scale: Scale) -> Result<HypothesisPair> {
        let hp = self.hp.as_deref().ok_or_else(|| validation("--hp is required"))?;
        let ha = self.ha.as_deref().ok_or_else(|| validation("--ha is required"))?;
        let interval = |label, b: &[f64], outside: bool| {
            if outside {
                IntervalHypothesis::outside(label, b[0], b[1], scale)
            } else {
                IntervalHypothesis::new(label, b[0], b[1], scale)
            }
        };
        make_pair(
            interval(HypothesisLabel::Present, hp, self.hp_outside)?,
            interval(HypothesisLabel::Absent, ha, self.ha_outside)?,
            self.pi,
            self.rule.into(),
            self.cri_level,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct McArgs {
    #[arg(long, env = "TWOIT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_DRAWS)]
    pub draws: usize,
}

/// `jeffreys`, `uniform` or `A,B`.
pub fn parse_beta_prior(s: &str) -> Result<BetaPrior> {
    match s {
        "jeffreys" => Ok(BetaPrior::jeffreys()),
        "uniform" => Ok(BetaPrior::uniform()),
        other => {
            let parts: Vec<&str> = other.split(',').collect();
            let nums = parts.iter().map(|p| p.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>();
            match nums.as_deref() {
                Ok([a, b]) => BetaPrior::new(*a, *b),
                _ => Err(invalid(format!("prior must be jeffreys, uniform or A,B; got {other:?}"))),
            }
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct NormalPriorArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu0: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub kappa0: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub nu0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma0_sq: f64,
}

impl NormalPriorArgs {
    pub fn build(&self) -> Result<NormalPrior> {
        NormalPrior::new(self.mu0, self.kappa0, self.nu0, self.sigma0_sq)
    }
}

#[derive(Debug, Clone, Args)]
pub struct TestPropArgs {
    #[arg(long)]
    pub x: u64,
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, default_value = "jeffreys")]
    pub prior: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TestTwoPropArgs {
    #[arg(long)]
    pub x1: u64,
    #[arg(long)]
    pub n1: u64,
    #[arg(long)]
    pub x2: u64,
    #[arg(long)]
    pub n2: u64,
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, default_value = "jeffreys")]
    pub prior: String,
    #[command(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TestMeanArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, allow_negative_numbers = true)]
    pub mean: f64,
    /// Sample standard deviation (divisor n - 1).
    #[arg(long)]
    pub sd: f64,
    #[command(flatten)]
    pub pair: PairArgs,
    #[command(flatten)]
    pub prior: NormalPriorArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TestMeanDiffArgs {
    #[arg(long)]
    pub n1: u64,
    #[arg(long, allow_negative_numbers = true)]
    pub mean1: f64,
    #[arg(long)]
    pub sd1: f64,
    #[arg(long)]
    pub n2: u64,
    #[arg(long, allow_negative_numbers = true)]
    pub mean2: f64,
    #[arg(long)]
    pub sd2: f64,
    #[command(flatten)]
    pub pair: PairArgs,
    #[command(flatten)]
    pub prior: NormalPriorArgs,
    #[command(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Rr,
    Or,
}

#[derive(Debug, Clone, Args)]
pub struct TestRatioArgs {
    #[arg(long)]
    pub x1: u64,
    #[arg(long)]
    pub n1: u64,
    #[arg(long)]
    pub x2: u64,
    #[arg(long)]
    pub n2: u64,
    #[arg(long, value_enum, default_value_t = MeasureArg::Rr)]
    pub measure: MeasureArg,
    /// Build both hypotheses around this target ratio instead of --hp/--ha.
    #[arg(long, conflicts_with_all = ["hp", "ha"])]
    pub target: Option<f64>,
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, default_value = "jeffreys")]
    pub prior: String,
    #[command(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TestSummaryRatioArgs {
    /// Published point estimate of the ratio.
    #[arg(long)]
    pub estimate: f64,
    #[arg(long, num_args = 2, value_names = ["LOWER", "UPPER"])]
    pub ci: Vec<f64>,
    #[arg(long, default_value_t = 0.95)]
    pub ci_level: f64,
    /// Prior sd of the log ratio; defaults to ln(20)/1.96.
    #[arg(long)]
    pub prior_sd_log: Option<f64>,
    #[command(flatten)]
    pub pair: PairArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// TOML file with the scenario.
    #[arg(long)]
    pub config: PathBuf,
    /// Directory receiving oc.csv (and bias.csv).
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Overrides the seed in the configuration.
    #[arg(long, env = "TWOIT_SEED")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Example1,
    Example2,
    Example3,
    OrConsistency,
    Tables,
    Figures,
}

#[derive(Debug, Clone, Args)]
pub struct ReplicateArgs {
    #[arg(value_enum)]
    pub which: Which,
    /// Directory receiving the report and CSV files; nothing is written without it.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long, env = "TWOIT_SEED", default_value_t = 20_200_101)]
    pub seed: u64,
    /// Posterior draws for the worked examples.
    #[arg(long, default_value_t = 1_000_000)]
    pub draws: usize,
    /// Sample sizes for `tables` (default 120, 150, 200, 400).
    #[arg(long, num_args = 1..)]
    pub n: Vec<u64>,
    /// Replications per cell for `tables` and `figures`.
    #[arg(long, default_value_t = 2000)]
    pub n_sims: usize,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}
