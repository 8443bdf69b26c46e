//! Posterior engines: each turns data plus a prior into a [`PosteriorSummary`]
//! holding the point estimate, the equal-tailed credible interval and the
//! posterior masses of `H_P` and `H_A`.

mod beta;
mod log_summary;
mod normal;

use serde::{Deserialize, Serialize};

pub use beta::{
    beta_interval_mass, one_prop_posterior, one_prop_summary, two_prop_diff_posterior,
    two_prop_ratio_posterior, BetaPosterior, BetaPrior, IntervalMass, RatioMeasure, TwoPropData,
};
pub(crate) use beta::two_prop_diff_with_rng;
pub use log_summary::{default_prior_sd_log, log_scale_posterior, summary_log_posterior, LogScalePosterior};
pub use normal::{
    mean_diff_two_groups, mean_interval_mass, mean_posterior, mean_summary, NormalMeanPosterior,
    NormalPrior, SampleStats,
};

use crate::error::{validation, Result};
use crate::hypothesis::{HypothesisPair, Scale};
use crate::numerics::{empirical_quantile, SeededStream};

/// Minimum number of Monte Carlo draws accepted by the engines.
pub const MIN_DRAWS: usize = 10_000;
/// Draw count used when the caller does not specify one.
pub const DEFAULT_DRAWS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CredibleInterval {
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
}

impl CredibleInterval {
    pub fn length(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    Exact,
    MonteCarlo { draws: usize, seed: u64, stream_id: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorSummary {
    /// Posterior median (posterior mean of the ratio for log-scale summaries).
    pub point: f64,
    pub cri: CredibleInterval,
    pub mass_hp: f64,
    pub mass_ha: f64,
    pub scale: Scale,
    pub method: Method,
    /// Clamp events and similar provenance notes.
    pub warnings: Vec<String>,
}

/// Draw count and random stream for a Monte Carlo engine call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McOptions {
    pub draws: usize,
    pub stream: SeededStream,
}

impl McOptions {
    pub fn new(draws: usize, stream: SeededStream) -> Self {
        Self { draws, stream }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.draws < MIN_DRAWS {
            return Err(validation(format!(
                "draws must be at least {MIN_DRAWS}, got {}",
                self.draws
            )));
        }
        Ok(())
    }

    pub(crate) fn method(&self) -> Method {
        Method::MonteCarlo { draws: self.draws, seed: self.stream.seed, stream_id: self.stream.stream_id }
    }
}

pub(crate) fn require_scale(pair: &HypothesisPair, scale: Scale, engine: &str) -> Result<()> {
    if pair.scale() != scale {
        return Err(validation(format!(
            "{engine} needs a {} hypothesis pair",
            match scale {
                Scale::Natural => "natural-scale",
                Scale::Log => "log-scale",
            }
        )));
    }
    Ok(())
}

/// Summarise posterior draws: interval masses are the fraction of draws in
/// each hypothesis, the credible interval and point come from percentiles.
pub(crate) fn summarize_draws(
    mut draws: Vec<f64>,
    pair: &HypothesisPair,
    scale: Scale,
    method: Method,
) -> PosteriorSummary {
    let total = draws.len() as f64;
    let (mut in_hp, mut in_ha) = (0usize, 0usize);
    for &d in &draws {
        in_hp += pair.h_p.contains(d) as usize;
        in_ha += pair.h_a.contains(d) as usize;
    }
    let alpha = 1.0 - pair.cri_level;
    let lower = empirical_quantile(&mut draws, alpha / 2.0);
    let point = empirical_quantile(&mut draws, 0.5);
    let upper = empirical_quantile(&mut draws, 1.0 - alpha / 2.0);
    PosteriorSummary {
        point,
        cri: CredibleInterval { lower, upper, level: pair.cri_level },
        mass_hp: in_hp as f64 / total,
        mass_ha: in_ha as f64 / total,
        scale,
        method,
        warnings: Vec::new(),
    }
}
