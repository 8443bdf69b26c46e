use rayon::prelude::*;

use super::{with_workers, GridPrior, OCPoint, OcMethod, OutcomeCounts, OutcomeRates, ScenarioGrid, Situation, Truth};
use crate::decision::{evaluate, Outcome};
use crate::error::{validation, Result};
use crate::numerics::sample_binomial;
use crate::posterior::{two_prop_diff_with_rng, BetaPrior, Method, TwoPropData, MIN_DRAWS};

fn replicate(grid: &ScenarioGrid, prior: BetaPrior, ni: usize, n: u64, truth: Truth, rep: usize) -> Result<Outcome> {
    let stream = grid.stream(ni, truth, rep);
    let mut rng = stream.rng();
    let p2 = grid.baseline;
    let p1 = p2 + grid.truth_value(truth);
    let x1 = sample_binomial(n, p1, &mut rng)?;
    let x2 = sample_binomial(n, p2, &mut rng)?;
    let data = TwoPropData::new(x1, n, x2, n)?;
    let method = Method::MonteCarlo { draws: grid.draws, seed: stream.seed, stream_id: stream.stream_id };
    let summary = two_prop_diff_with_rng(&data, prior, &grid.pair, grid.draws, &mut rng, method)?;
    Ok(evaluate(&summary, &grid.pair)?.outcome)
}

/// Simulated operating characteristics for the difference of two
/// proportions with `N` subjects per group. Each replication draws both
/// groups' counts and then `grid.draws` posterior draws from its own stream.
pub fn mc_two_prop_oc(grid: &ScenarioGrid, workers: usize) -> Result<Vec<OCPoint>> {
    grid.validate()?;
    if grid.situation != Situation::TwoProp {
        return Err(validation("expected a two-proportion grid"));
    }
    let GridPrior::Beta(prior) = grid.prior else {
        return Err(validation("two-proportion grids need a beta prior"));
    };
    if grid.draws < MIN_DRAWS {
        return Err(validation(format!("draws must be at least {MIN_DRAWS}")));
    }
    with_workers(workers, || {
        grid.n_grid
            .iter()
            .enumerate()
            .map(|(ni, &n)| {
                let mut rates = [OutcomeRates::default(); 2];
                for truth in Truth::BOTH {
                    let counts = (0..grid.n_sims)
                        .into_par_iter()
                        .map(|rep| {
                            let mut c = OutcomeCounts::default();
                            c.record(replicate(grid, prior, ni, n, truth, rep)?);
                            Ok::<_, crate::error::Error>(c)
                        })
                        .try_reduce(OutcomeCounts::default, |a, b| Ok(a.merge(b)))?;
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
