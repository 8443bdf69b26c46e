//! Ready-made grids for the standard scenarios.

use super::{GridPrior, ScenarioGrid, Situation};
use crate::error::Result;
use crate::hypothesis::{symmetric_pair, DecisionRule};
use crate::posterior::{BetaPrior, NormalPrior, DEFAULT_DRAWS};

/// True proportion under `H_A` in the one-proportion scenarios.
pub const ONE_PROP_BASES: [f64; 4] = [0.1, 0.3, 0.4, 0.5];
/// Gap between the `H_P` and `H_A` proportions.
pub const ONE_PROP_DELTAS: [f64; 3] = [0.1, 0.2, 0.3];
pub const ONE_PROP_WIDTHS: [f64; 3] = [0.1, 0.2, 0.3];

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

fn rule_tag(rule: DecisionRule) -> &'static str {
    match rule {
        DecisionRule::CriInclusion => "cri",
        DecisionRule::ProbabilityThreshold => "threshold",
    }
}

/// The twelve one-proportion scenarios at one interval width, `N` from 10 to
/// 1000 in steps of 10, Jeffreys prior.
pub fn one_prop_paper_scenarios(width: f64, rule: DecisionRule) -> Result<Vec<ScenarioGrid>> {
    let mut out = Vec::new();
    for base in ONE_PROP_BASES {
        for delta in ONE_PROP_DELTAS {
            let target = round3(base + delta);
            out.push(ScenarioGrid {
                situation: Situation::OneProp,
                scenario_id: format!("a{base}_p{target}_w{width}_{}", rule_tag(rule)),
                truth_a: base,
                truth_p: target,
                baseline: 0.0,
                pair: symmetric_pair(base, target, width, 0.95, rule)?,
                n_grid: (1..=100).map(|k| 10 * k).collect(),
                n_sims: 0,
                data_sd: 0.0,
                prior: GridPrior::Beta(BetaPrior::jeffreys()),
                draws: 0,
                seed: 0,
            });
        }
    }
    Ok(out)
}

/// Difference of two proportions: 0.5 against 0.5 under `H_A` and 0.7 against
/// 0.5 under `H_P`, hypotheses `[-0.1, 0.1]` and `[0.1, 0.3]`, threshold 0.95.
pub fn two_prop_paper_grid(n_grid: Vec<u64>, n_sims: usize, seed: u64) -> Result<ScenarioGrid> {
    Ok(ScenarioGrid {
        situation: Situation::TwoProp,
        scenario_id: "superiority_0.5_vs_0.7".into(),
        truth_a: 0.0,
        truth_p: 0.2,
        baseline: 0.5,
        pair: symmetric_pair(0.0, 0.2, 0.2, 0.95, DecisionRule::ProbabilityThreshold)?,
        n_grid,
        n_sims,
        data_sd: 0.0,
        prior: GridPrior::Beta(BetaPrior::jeffreys()),
        draws: DEFAULT_DRAWS,
        seed,
    })
}

fn mean_grid(id: &str, mu_a: f64, mu_p: f64, n_grid: Vec<u64>, n_sims: usize, seed: u64) -> Result<ScenarioGrid> {
    Ok(ScenarioGrid {
        situation: Situation::Mean,
        scenario_id: id.into(),
        truth_a: mu_a,
        truth_p: mu_p,
        baseline: 0.0,
        pair: symmetric_pair(mu_a, mu_p, 1.0, 0.95, DecisionRule::CriInclusion)?,
        n_grid,
        n_sims,
        data_sd: 3.0,
        prior: GridPrior::Normal { prior: NormalPrior::new(mu_a, 1.0, 1.0, 9.0)?, center_on_truth: true },
        draws: 0,
        seed,
    })
}

/// Normal mean 0 under `H_A` and 1 under `H_P`, data sd 3, unit-width
/// hypotheses, credible-interval rule.
pub fn paper_mean_grid(n_grid: Vec<u64>, n_sims: usize, seed: u64) -> Result<ScenarioGrid> {
    mean_grid("mean_0_vs_1", 0.0, 1.0, n_grid, n_sims, seed)
}

/// The same design shifted to means 10 and 11, as used for the bias tables.
pub fn bias_table_grid(n_grid: Vec<u64>, n_sims: usize, seed: u64) -> Result<ScenarioGrid> {
    mean_grid("mean_10_vs_11", 10.0, 11.0, n_grid, n_sims, seed)
}
