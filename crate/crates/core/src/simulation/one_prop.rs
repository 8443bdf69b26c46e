use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{
    with_workers, GridPrior, OCPoint, OcMethod, OutcomeCounts, OutcomeRates, ScenarioGrid, Situation, Truth, MIN_SIMS,
};
use crate::decision::{evaluate, Outcome};
use crate::error::{validation, Result};
use crate::hypothesis::HypothesisPair;
use crate::numerics::{ln_gamma, sample_binomial};
use crate::posterior::{one_prop_posterior, one_prop_summary, BetaPrior};

/// Counts whose probability under both truths falls below this are skipped.
const PMF_FLOOR: f64 = 1e-18;

fn beta_prior(grid: &ScenarioGrid) -> Result<BetaPrior> {
    if grid.situation != Situation::OneProp {
        return Err(validation("expected a one-proportion grid"));
    }
    match grid.prior {
        GridPrior::Beta(p) => Ok(p),
        GridPrior::Normal { .. } => Err(validation("one-proportion grids need a beta prior")),
    }
}

fn verdict(x: u64, n: u64, prior: BetaPrior, pair: &HypothesisPair) -> Result<Outcome> {
    let post = one_prop_posterior(x, n, prior)?;
    Ok(evaluate(&one_prop_summary(&post, pair)?, pair)?.outcome)
}

fn binomial_pmf(x: u64, n: u64, p: f64, ln_n_fact: f64) -> f64 {
    if p == 0.0 {
        return if x == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if x == n { 1.0 } else { 0.0 };
    }
    let (xf, nf) = (x as f64, n as f64);
    let ln_choose = ln_n_fact - ln_gamma(xf + 1.0) - ln_gamma(nf - xf + 1.0);
    (ln_choose + xf * p.ln() + (nf - xf) * (-p).ln_1p()).exp()
}

fn exact_point(grid: &ScenarioGrid, prior: BetaPrior, n: u64) -> Result<OCPoint> {
    let (pa, pp) = (grid.truth_a, grid.truth_p);
    let ln_n_fact = ln_gamma(n as f64 + 1.0);
    let mut given_ha = OutcomeRates::default();
    let mut given_hp = OutcomeRates::default();
    for x in 0..=n {
        let wa = binomial_pmf(x, n, pa, ln_n_fact);
        let wp = binomial_pmf(x, n, pp, ln_n_fact);
        if wa < PMF_FLOOR && wp < PMF_FLOOR {
            continue;
        }
        let o = verdict(x, n, prior, &grid.pair)?;
        given_ha.add(o, wa);
        given_hp.add(o, wp);
    }
    Ok(OCPoint { n, given_ha, given_hp, method: OcMethod::Exact })
}

/// Exact operating characteristics for one proportion: for every `N`, the
/// probability of each outcome is the binomial-weighted sum of the verdicts
/// over all possible counts. Runs on the current rayon pool.
pub fn exact_one_prop_oc(grid: &ScenarioGrid) -> Result<Vec<OCPoint>> {
    grid.validate()?;
    let prior = beta_prior(grid)?;
    grid.n_grid.par_iter().map(|&n| exact_point(grid, prior, n)).collect()
}

/// Simulated counterpart of [`exact_one_prop_oc`]: `n_sims` binomial counts
/// per cell, each classified with the same exact verdict.
pub fn mc_one_prop_oc(grid: &ScenarioGrid, workers: usize) -> Result<Vec<OCPoint>> {
    grid.validate()?;
    let prior = beta_prior(grid)?;
    if grid.n_sims < MIN_SIMS {
        return Err(validation(format!("n_sims must be at least {MIN_SIMS}")));
    }
    with_workers(workers, || {
        grid.n_grid
            .iter()
            .enumerate()
            .map(|(ni, &n)| {
                let mut rates = [OutcomeRates::default(); 2];
                for truth in Truth::BOTH {
                    let p = grid.truth_value(truth);
                    let xs = (0..grid.n_sims)
                        .into_par_iter()
                        .map(|rep| sample_binomial(n, p, &mut grid.stream(ni, truth, rep).rng()))
                        .collect::<Result<Vec<u64>>>()?;
                    let mut tally: BTreeMap<u64, usize> = BTreeMap::new();
                    for x in xs {
                        *tally.entry(x).or_default() += 1;
                    }
                    let mut counts = OutcomeCounts::default();
                    for (x, c) in tally {
                        let o = verdict(x, n, prior, &grid.pair)?;
                        for _ in 0..c {
                            counts.record(o);
                        }
                    }
                    rates[truth.index() as usize] = OutcomeRates::from_counts(&counts, grid.n_sims);
                }
                Ok(OCPoint {
                    n,
                    given_ha: rates[0],
                    given_hp: rates[1],
                    method: OcMethod::MonteCarlo { n_sims: grid.n_sims },
                })
            })
            .collect()
    })?
}
