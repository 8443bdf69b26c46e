use rand_distr::Distribution;
use rayon::prelude::*;

use super::{
    with_workers, BiasRecord, GridPrior, OCPoint, OcMethod, OutcomeCounts, OutcomeRates, ScenarioGrid, Situation,
    Truth,
};
use crate::decision::{evaluate, Outcome};
use crate::error::{validation, Result};
use crate::numerics::normal_dist;
use crate::posterior::{mean_posterior, mean_summary, NormalPrior, SampleStats};

fn replicate(
    grid: &ScenarioGrid,
    prior: NormalPrior,
    ni: usize,
    n: u64,
    truth: Truth,
    rep: usize,
) -> Result<(Outcome, BiasRecord)> {
    let mu = grid.truth_value(truth);
    let dist = normal_dist(mu, grid.data_sd)?;
    let mut rng = grid.stream(ni, truth, rep).rng();
    let values: Vec<f64> = dist.sample_iter(&mut rng).take(n as usize).collect();
    let stats = SampleStats::from_data(&values)?;
    let post = mean_posterior(&stats, &prior)?;
    let outcome = evaluate(&mean_summary(&post, &grid.pair)?, &grid.pair)?.outcome;
    let accepted = match truth {
        Truth::Ha => outcome.accepts_ha(),
        Truth::Hp => outcome.accepts_hp(),
    };
    Ok((outcome, BiasRecord { n, truth, accepted, sample_mean: stats.ybar, sample_sd: stats.sd() }))
}

/// Simulated operating characteristics for a normal mean, together with the
/// sample statistics of every replication for the selection-bias tables.
///
/// Records come out ordered by sample size, then truth, then replication.
pub fn mc_mean_oc(grid: &ScenarioGrid, workers: usize) -> Result<(Vec<OCPoint>, Vec<BiasRecord>)> {
    grid.validate()?;
    if grid.situation != Situation::Mean {
        return Err(validation("expected a mean grid"));
    }
    let GridPrior::Normal { prior, center_on_truth } = grid.prior else {
        return Err(validation("mean grids need a normal prior"));
    };
    with_workers(workers, || {
        let mut points = Vec::with_capacity(grid.n_grid.len());
        let mut records = Vec::with_capacity(grid.n_grid.len() * 2 * grid.n_sims);
        for (ni, &n) in grid.n_grid.iter().enumerate() {
            let mut rates = [OutcomeRates::default(); 2];
            for truth in Truth::BOTH {
                let prior = if center_on_truth { NormalPrior { mu0: grid.truth_value(truth), ..prior } } else { prior };
                let results = (0..grid.n_sims)
                    .into_par_iter()
                    .map(|rep| replicate(grid, prior, ni, n, truth, rep))
                    .collect::<Result<Vec<_>>>()?;
                let mut counts = OutcomeCounts::default();
                for (o, rec) in results {
                    counts.record(o);
                    records.push(rec);
                }
                rates[truth.index() as usize] = OutcomeRates::from_counts(&counts, grid.n_sims);
            }
            points.push(OCPoint {
                n,
                given_ha: rates[0],
                given_hp: rates[1],
                method: OcMethod::MonteCarlo { n_sims: grid.n_sims },
            });
        }
        Ok((points, records))
    })?
}
