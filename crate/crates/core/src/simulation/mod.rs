//! Operating characteristics and selection bias of the two-interval test.
//!
//! A [`ScenarioGrid`] fixes the true parameter value under each hypothesis,
//! the hypothesis pair, the sample sizes and the number of replications.
//! One proportion is handled exactly by summing binomial probabilities over
//! every possible count; two proportions and the normal mean are simulated.
//!
//! Every replication draws from its own stream,
//! `stream_id = cell_index · 2^20 + replication`, with
//! `cell_index = n_index · 2 + truth_index`, so results do not depend on the
//! number of worker threads.

mod bias;
mod mean;
mod one_prop;
mod paper;
mod two_prop;

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::decision::Outcome;
use crate::error::{validation, Error, Result};
use crate::hypothesis::HypothesisPair;
use crate::numerics::SeededStream;
use crate::posterior::{BetaPrior, NormalPrior};

pub use bias::{bias_quantiles, bimodality_coefficient, write_bias_csv, BiasRow};
pub use mean::mc_mean_oc;
pub use one_prop::{exact_one_prop_oc, mc_one_prop_oc};
pub use paper::{
    bias_table_grid, one_prop_paper_scenarios, paper_mean_grid, two_prop_paper_grid, ONE_PROP_BASES,
    ONE_PROP_DELTAS, ONE_PROP_WIDTHS,
};
pub use two_prop::mc_two_prop_oc;

/// Largest sample size accepted by the harness.
pub const MAX_N: u64 = 1_000_000;
/// Smallest replication count accepted for simulated situations.
pub const MIN_SIMS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Situation {
    OneProp,
    TwoProp,
    Mean,
}

impl Situation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Situation::OneProp => "one_prop",
            Situation::TwoProp => "two_prop",
            Situation::Mean => "mean",
        }
    }
}

/// Which hypothesis generated the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Truth {
    #[serde(rename = "HA")]
    Ha,
    #[serde(rename = "HP")]
    Hp,
}

impl Truth {
    pub const BOTH: [Truth; 2] = [Truth::Ha, Truth::Hp];

    pub fn index(&self) -> u64 {
        match self {
            Truth::Ha => 0,
            Truth::Hp => 1,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Truth::Ha => "HA",
            Truth::Hp => "HP",
        }
    }
}

/// Prior handed to the engine in every replication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridPrior {
    Beta(BetaPrior),
    /// With `center_on_truth`, the prior mean is replaced by the true mean of the cell.
    Normal { prior: NormalPrior, center_on_truth: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioGrid {
    pub situation: Situation,
    pub scenario_id: String,
    /// Parameter value under `H_A`: a proportion, a difference of proportions or a mean.
    pub truth_a: f64,
    pub truth_p: f64,
    /// Two proportions only: the rate of the second group; the first is `baseline + truth`.
    pub baseline: f64,
    pub pair: HypothesisPair,
    pub n_grid: Vec<u64>,
    pub n_sims: usize,
    /// Mean only: standard deviation of the simulated observations.
    pub data_sd: f64,
    pub prior: GridPrior,
    /// Posterior draws per replication (two proportions).
    pub draws: usize,
    pub seed: u64,
}

impl ScenarioGrid {
    pub fn truth_value(&self, truth: Truth) -> f64 {
        match truth {
            Truth::Ha => self.truth_a,
            Truth::Hp => self.truth_p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_grid.is_empty() {
            return Err(validation("n_grid is empty"));
        }
        if self.n_grid[0] == 0 {
            return Err(validation("sample sizes must be positive"));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(validation("n_grid must be strictly increasing"));
        }
        if let Some(&n) = self.n_grid.iter().find(|&&n| n > MAX_N) {
            return Err(Error::ResourceGuard(format!("sample size {n} exceeds {MAX_N}")));
        }
        let prob = |v: f64| (0.0..=1.0).contains(&v);
        match self.situation {
            Situation::OneProp => {
                if !prob(self.truth_a) || !prob(self.truth_p) {
                    return Err(validation("true proportions must lie in [0, 1]"));
                }
            }
            Situation::TwoProp => {
                if !prob(self.baseline)
                    || !prob(self.baseline + self.truth_a)
                    || !prob(self.baseline + self.truth_p)
                {
                    return Err(validation("baseline + difference must stay in [0, 1]"));
                }
            }
            Situation::Mean => {
                if !(self.data_sd > 0.0 && self.data_sd.is_finite()) {
                    return Err(validation("data_sd must be positive"));
                }
                if self.n_grid[0] < 2 {
                    return Err(validation("mean simulations need at least two observations"));
                }
            }
        }
        if self.situation != Situation::OneProp && self.n_sims < MIN_SIMS {
            return Err(validation(format!("n_sims must be at least {MIN_SIMS}, got {}", self.n_sims)));
        }
        Ok(())
    }

    pub(crate) fn stream(&self, n_index: usize, truth: Truth, rep: usize) -> SeededStream {
        SeededStream::new(self.seed, stream_id(n_index, truth, rep))
    }
}

pub fn stream_id(n_index: usize, truth: Truth, rep: usize) -> u64 {
    ((n_index as u64) * 2 + truth.index()) * (1 << 20) + rep as u64
}

/// Frequencies of each outcome under one truth. `accept_hp` and `accept_ha`
/// both include ambiguous verdicts, where the criteria for both hypotheses
/// are met at once.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct OutcomeRates {
    pub accept_hp: f64,
    pub accept_ha: f64,
    pub serendipity: f64,
    pub insufficient: f64,
    pub ambiguous: f64,
}

impl OutcomeRates {
    pub(crate) fn add(&mut self, outcome: Outcome, weight: f64) {
        match outcome {
            Outcome::AcceptHp => self.accept_hp += weight,
            Outcome::AcceptHa => self.accept_ha += weight,
            Outcome::Serendipity => self.serendipity += weight,
            Outcome::InsufficientPower => self.insufficient += weight,
            Outcome::AmbiguousOverlap => {
                self.accept_hp += weight;
                self.accept_ha += weight;
                self.ambiguous += weight;
            }
        }
    }

    pub(crate) fn from_counts(counts: &OutcomeCounts, total: usize) -> Self {
        let mut r = OutcomeRates::default();
        let t = total as f64;
        for (o, &c) in Outcome::ALL.iter().zip(counts.0.iter()) {
            r.add(*o, c as f64 / t);
        }
        r
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct OutcomeCounts(pub [usize; 5]);

impl OutcomeCounts {
    pub(crate) fn record(&mut self, o: Outcome) {
        self.0[Outcome::ALL.iter().position(|x| *x == o).unwrap()] += 1;
    }

    pub(crate) fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OcMethod {
    Exact,
    MonteCarlo { n_sims: usize },
}

/// One sample size of an operating-characteristics sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OCPoint {
    pub n: u64,
    pub given_ha: OutcomeRates,
    pub given_hp: OutcomeRates,
    pub method: OcMethod,
}

impl OCPoint {
    pub fn rates(&self, truth: Truth) -> &OutcomeRates {
        match truth {
            Truth::Ha => &self.given_ha,
            Truth::Hp => &self.given_hp,
        }
    }

    pub fn p_hp_given_hp(&self) -> f64 {
        self.given_hp.accept_hp
    }

    pub fn p_ha_given_hp(&self) -> f64 {
        self.given_hp.accept_ha
    }

    pub fn p_hp_given_ha(&self) -> f64 {
        self.given_ha.accept_hp
    }

    pub fn p_ha_given_ha(&self) -> f64 {
        self.given_ha.accept_ha
    }
}

/// An operating-characteristics sweep tagged with where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct OcTable {
    pub situation: Situation,
    pub scenario_id: String,
    pub seed: u64,
    pub points: Vec<OCPoint>,
}

impl OcTable {
    pub fn new(grid: &ScenarioGrid, points: Vec<OCPoint>) -> Self {
        Self { situation: grid.situation, scenario_id: grid.scenario_id.clone(), seed: grid.seed, points }
    }
}

#[derive(Serialize)]
struct OcRow<'a> {
    situation: &'a str,
    scenario_id: &'a str,
    n: u64,
    truth: &'a str,
    p_accept_hp: f64,
    p_accept_ha: f64,
    p_serendipity: f64,
    p_insufficient: f64,
    method: &'a str,
    n_sims: usize,
    seed: u64,
}

/// Write `oc.csv`: one row per table, sample size and truth.
pub fn write_oc_csv<W: Write>(out: W, tables: &[OcTable]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for t in tables {
        for p in &t.points {
            let (method, n_sims) = match p.method {
                OcMethod::Exact => ("exact", 0),
                OcMethod::MonteCarlo { n_sims } => ("mc", n_sims),
            };
            for truth in Truth::BOTH {
                let r = p.rates(truth);
                w.serialize(OcRow {
                    situation: t.situation.as_str(),
                    scenario_id: &t.scenario_id,
                    n: p.n,
                    truth: truth.as_str(),
                    p_accept_hp: r.accept_hp,
                    p_accept_ha: r.accept_ha,
                    p_serendipity: r.serendipity,
                    p_insufficient: r.insufficient,
                    method,
                    n_sims,
                    seed: t.seed,
                })?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Sample statistics of one simulated data set, tagged by whether the test
/// accepted the hypothesis that generated it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiasRecord {
    pub n: u64,
    pub truth: Truth,
    pub accepted: bool,
    pub sample_mean: f64,
    pub sample_sd: f64,
}

/// Run `f` on a pool with `workers` threads; `0` lets rayon decide.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
