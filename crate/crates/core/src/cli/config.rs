//! Scenario files for `simulate-oc` and `simulate-bias`.
//!
//! A scenario is a flat TOML table:
//!
//! ```toml
//! situation = "two_prop"        # one_prop | two_prop | mean
//! scenario_id = "superiority"
//! truth_a = 0.0                 # proportion, difference or mean under H_A
//! truth_p = 0.2
//! baseline = 0.5                # two_prop: rate of the second group
//! ha = [-0.1, 0.1]
//! hp = [0.1, 0.3]
//! pi = 0.95
//! rule = "threshold"            # threshold | cri
//! n_grid = [20, 100, 400, 800]  # or n_min / n_max / n_step
//! n_sims = 2000
//! draws = 100000
//! prior = "jeffreys"            # jeffreys | uniform | "A,B"
//! seed = 7
//! ```
//!
//! Mean scenarios add `data_sd`, `mu0`, `kappa0`, `nu0`, `sigma0_sq` and
//! `center_prior_on_truth`. One-proportion scenarios are computed exactly
//! unless `method = "mc"`.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use super::args::{parse_beta_prior, SimulateArgs};
use crate::error::{validation, Error, Result};
use crate::hypothesis::{make_pair, DecisionRule, HypothesisLabel, IntervalHypothesis, Scale};
use crate::posterior::{NormalPrior, DEFAULT_DRAWS};
use crate::simulation::{
    bias_quantiles, exact_one_prop_oc, mc_mean_oc, mc_one_prop_oc, mc_two_prop_oc, write_bias_csv, write_oc_csv,
    GridPrior, OcTable, ScenarioGrid, Situation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleName {
    Threshold,
    Cri,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodName {
    #[default]
    Exact,
    Mc,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub situation: Situation,
    #[serde(default = "default_id")]
    pub scenario_id: String,
    pub truth_a: f64,
    pub truth_p: f64,
    #[serde(default = "default_baseline")]
    pub baseline: f64,
    pub ha: [f64; 2],
    pub hp: [f64; 2],
    #[serde(default)]
    pub ha_outside: bool,
    #[serde(default)]
    pub hp_outside: bool,
    #[serde(default = "default_level")]
    pub pi: f64,
    pub rule: RuleName,
    #[serde(default = "default_level")]
    pub cri_level: f64,
    pub n_grid: Option<Vec<u64>>,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub n_step: Option<u64>,
    #[serde(default = "default_sims")]
    pub n_sims: usize,
    #[serde(default = "default_draws")]
    pub draws: usize,
    #[serde(default)]
    pub method: MethodName,
    #[serde(default = "default_sd")]
    pub data_sd: f64,
    #[serde(default = "default_prior")]
    pub prior: String,
    #[serde(default)]
    pub mu0: f64,
    #[serde(default = "one")]
    pub kappa0: f64,
    #[serde(default = "one")]
    pub nu0: f64,
    #[serde(default = "default_sigma0_sq")]
    pub sigma0_sq: f64,
    #[serde(default = "yes")]
    pub center_prior_on_truth: bool,
    #[serde(default)]
    pub seed: u64,
}

fn default_id() -> String {
    "scenario".into()
}
fn default_baseline() -> f64 {
    0.5
}
fn default_level() -> f64 {
    0.95
}
fn default_sims() -> usize {
    2000
}
fn default_draws() -> usize {
    DEFAULT_DRAWS
}
fn default_sd() -> f64 {
    3.0
}
fn default_prior() -> String {
    "jeffreys".into()
}
fn one() -> f64 {
    1.0
}
fn default_sigma0_sq() -> f64 {
    9.0
}
fn yes() -> bool {
    true
}

impl SimulationConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))
    }

    fn n_grid(&self) -> Result<Vec<u64>> {
        match (&self.n_grid, self.n_min, self.n_max, self.n_step) {
            (Some(g), None, None, None) => Ok(g.clone()),
            (None, Some(lo), Some(hi), step) => {
                let step = step.unwrap_or(1);
                if step == 0 || lo > hi {
                    return Err(validation("need n_min <= n_max and a positive n_step"));
                }
                Ok((lo..=hi).step_by(step as usize).collect())
            }
            _ => Err(validation("give either n_grid or n_min/n_max[/n_step]")),
        }
    }

    pub fn to_grid(&self, seed_override: Option<u64>) -> Result<ScenarioGrid> {
        let rule = match self.rule {
            RuleName::Threshold => DecisionRule::ProbabilityThreshold,
            RuleName::Cri => DecisionRule::CriInclusion,
        };
        let iv = |label, b: [f64; 2], outside: bool| {
            IntervalHypothesis::with_region(
                label,
                b[0],
                b[1],
                Scale::Natural,
                if outside { crate::hypothesis::Region::Outside } else { crate::hypothesis::Region::Inside },
            )
        };
        let pair = make_pair(
            iv(HypothesisLabel::Present, self.hp, self.hp_outside)?,
            iv(HypothesisLabel::Absent, self.ha, self.ha_outside)?,
            self.pi,
            rule,
            self.cri_level,
        )?;
        let prior = match self.situation {
            Situation::Mean => GridPrior::Normal {
                prior: NormalPrior::new(self.mu0, self.kappa0, self.nu0, self.sigma0_sq)?,
                center_on_truth: self.center_prior_on_truth,
            },
            _ => GridPrior::Beta(parse_beta_prior(&self.prior)?),
        };
        let grid = ScenarioGrid {
            situation: self.situation,
            scenario_id: self.scenario_id.clone(),
            truth_a: self.truth_a,
            truth_p: self.truth_p,
            baseline: self.baseline,
            pair,
            n_grid: self.n_grid()?,
            n_sims: self.n_sims,
            data_sd: self.data_sd,
            prior,
            draws: self.draws,
            seed: seed_override.unwrap_or(self.seed),
        };
        grid.validate()?;
        Ok(grid)
    }
}

fn prepare(a: &SimulateArgs) -> Result<(SimulationConfig, ScenarioGrid)> {
    let cfg = SimulationConfig::load(&a.config)?;
    let grid = cfg.to_grid(a.seed)?;
    fs::create_dir_all(&a.out_dir)?;
    Ok((cfg, grid))
}

pub fn simulate_oc(a: SimulateArgs) -> Result<i32> {
    let (cfg, grid) = prepare(&a)?;
    let points = match (grid.situation, cfg.method) {
        (Situation::OneProp, MethodName::Exact) => {
            crate::simulation::with_workers(a.workers, || exact_one_prop_oc(&grid))??
        }
        (Situation::OneProp, MethodName::Mc) => mc_one_prop_oc(&grid, a.workers)?,
        (Situation::TwoProp, _) => mc_two_prop_oc(&grid, a.workers)?,
        (Situation::Mean, _) => mc_mean_oc(&grid, a.workers)?.0,
    };
    let path = a.out_dir.join("oc.csv");
    write_oc_csv(fs::File::create(&path)?, &[OcTable::new(&grid, points)])?;
    println!("{}", serde_json::json!({ "oc": path, "seed": grid.seed, "n_sims": grid.n_sims }));
    Ok(0)
}

pub fn simulate_bias(a: SimulateArgs) -> Result<i32> {
    let (_, grid) = prepare(&a)?;
    if grid.situation != Situation::Mean {
        return Err(validation("simulate-bias needs situation = \"mean\""));
    }
    let (points, records) = mc_mean_oc(&grid, a.workers)?;
    let (rows, mut warnings) = bias_quantiles(&records, [0.025, 0.5, 0.975]);
    warnings.push(format!("observations simulated with sd {} (variance {})", grid.data_sd, grid.data_sd * grid.data_sd));
    let oc = a.out_dir.join("oc.csv");
    let bias = a.out_dir.join("bias.csv");
    write_oc_csv(fs::File::create(&oc)?, &[OcTable::new(&grid, points)])?;
    write_bias_csv(fs::File::create(&bias)?, &rows)?;
    println!(
        "{}",
        serde_json::json!({ "oc": oc, "bias": bias, "seed": grid.seed, "n_sims": grid.n_sims, "warnings": warnings })
    );
    Ok(0)
}
