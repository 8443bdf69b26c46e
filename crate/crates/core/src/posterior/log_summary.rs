//! Posterior of a ratio measure reconstructed from a published estimate and
//! confidence interval.
//!
//! The likelihood is taken as normal on the log scale, centred on the log of
//! the reported estimate with standard error
//! `(ln u - ln l) / (2 z)`, and combined with a zero-mean normal prior.

use serde::{Deserialize, Serialize};

use super::{require_scale, CredibleInterval, Method, PosteriorSummary};
use crate::error::{invalid, validation, Result};
use crate::hypothesis::{HypothesisPair, IntervalHypothesis, Region, Scale};
use crate::numerics::{normal_cdf, normal_quantile};

/// Prior sd on the log scale that puts 95% of the prior mass on `[1/20, 20]`.
pub fn default_prior_sd_log() -> f64 {
    20f64.ln() / 1.96
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogScalePosterior {
    pub mean_log: f64,
    pub sd_log: f64,
    pub se_log: f64,
    pub prior_precision: f64,
    pub likelihood_precision: f64,
}

pub fn log_scale_posterior(
    point_estimate: f64,
    ci: (f64, f64),
    ci_level: f64,
    prior_sd_log: f64,
) -> Result<LogScalePosterior> {
    let (l, u) = ci;
    if !(0.0 < l && l < point_estimate && point_estimate < u && u.is_finite()) {
        return Err(validation(format!(
            "need 0 < lower < estimate < upper, got {point_estimate} [{l}, {u}]"
        )));
    }
    if !(ci_level > 0.0 && ci_level < 1.0) {
        return Err(validation(format!("ci_level must lie in (0, 1), got {ci_level}")));
    }
    if !(prior_sd_log > 0.0) {
        return Err(invalid(format!("prior sd must be positive, got {prior_sd_log}")));
    }
    let z = normal_quantile(0.5 * (1.0 + ci_level));
    let se_log = (u.ln() - l.ln()) / (2.0 * z);
    let likelihood_precision = 1.0 / (se_log * se_log);
    let prior_precision = if prior_sd_log.is_infinite() { 0.0 } else { 1.0 / (prior_sd_log * prior_sd_log) };
    let precision = likelihood_precision + prior_precision;
    let mean_log = likelihood_precision * point_estimate.ln() / precision;
    Ok(LogScalePosterior {
        mean_log,
        sd_log: precision.recip().sqrt(),
        se_log,
        prior_precision,
        likelihood_precision,
    })
}

impl LogScalePosterior {
    pub fn interval_mass(&self, interval: &IntervalHypothesis) -> f64 {
        let z = |x: f64| (x.ln() - self.mean_log) / self.sd_log;
        let inside = (normal_cdf(z(interval.upper)) - normal_cdf(z(interval.lower))).max(0.0);
        match interval.region {
            Region::Inside => inside,
            Region::Outside => 1.0 - inside,
        }
    }

    /// Posterior mean of the ratio, `exp(μ + σ²/2)`.
    pub fn ratio_mean(&self) -> f64 {
        (self.mean_log + 0.5 * self.sd_log * self.sd_log).exp()
    }

    pub fn summary(&self, pair: &HypothesisPair) -> Result<PosteriorSummary> {
        require_scale(pair, Scale::Log, "log-scale summary posterior")?;
        let z = normal_quantile(0.5 * (1.0 + pair.cri_level));
        Ok(PosteriorSummary {
            point: self.ratio_mean(),
            cri: CredibleInterval {
                lower: (self.mean_log - z * self.sd_log).exp(),
                upper: (self.mean_log + z * self.sd_log).exp(),
                level: pair.cri_level,
            },
            mass_hp: self.interval_mass(&pair.h_p),
            mass_ha: self.interval_mass(&pair.h_a),
            scale: Scale::Log,
            method: Method::Exact,
            warnings: Vec::new(),
        })
    }
}

pub fn summary_log_posterior(
    point_estimate: f64,
    ci: (f64, f64),
    ci_level: f64,
    prior_sd_log: f64,
    pair: &HypothesisPair,
) -> Result<PosteriorSummary> {
    log_scale_posterior(point_estimate, ci, ci_level, prior_sd_log)?.summary(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::{make_pair, DecisionRule, HypothesisLabel};

    fn or_pair() -> HypothesisPair {
        let h_p = IntervalHypothesis::new(HypothesisLabel::Present, 1.1, 2.95, Scale::Log).unwrap();
        let h_a = IntervalHypothesis::new(HypothesisLabel::Absent, 0.9, 1.1, Scale::Log).unwrap();
        make_pair(h_p, h_a, 0.95, DecisionRule::ProbabilityThreshold, 0.95).unwrap()
    }

    #[test]
    fn rejects_unordered_ci() {
        assert!(log_scale_posterior(1.5, (2.0, 3.0), 0.95, 1.0).is_err());
        assert!(log_scale_posterior(1.5, (1.0, 1.2), 0.95, 1.0).is_err());
        assert!(log_scale_posterior(1.5, (0.0, 3.0), 0.95, 1.0).is_err());
    }

    #[test]
    fn precision_adds() {
        let post = log_scale_posterior(1.76, (1.0, 3.08), 0.95, default_prior_sd_log()).unwrap();
        let total = 1.0 / (post.sd_log * post.sd_log);
        assert!((total - post.prior_precision - post.likelihood_precision).abs() < 1e-10 * total);
    }

    #[test]
    fn second_study_estimate() {
        let s = summary_log_posterior(1.76, (1.0, 3.08), 0.95, default_prior_sd_log(), &or_pair()).unwrap();
        assert!((s.point - 1.80).abs() < 0.02, "{}", s.point);
        assert!((s.cri.lower - 1.00).abs() < 0.03 && (s.cri.upper - 3.01).abs() < 0.05);
    }

    #[test]
    fn symmetric_about_one() {
        let post = log_scale_posterior(1.0, (0.5, 2.0), 0.95, 2.0).unwrap();
        let up = IntervalHypothesis::new(HypothesisLabel::Present, 1.2, 1.8, Scale::Log).unwrap();
        let down = IntervalHypothesis::new(HypothesisLabel::Present, 1.0 / 1.8, 1.0 / 1.2, Scale::Log).unwrap();
        assert!((post.interval_mass(&up) - post.interval_mass(&down)).abs() < 1e-14);
    }

    #[test]
    fn vague_data_returns_prior() {
        // a huge standard error leaves the prior untouched
        let post = log_scale_posterior(2.0, (1e-150, 1e150), 0.95, 0.7).unwrap();
        assert!(post.mean_log.abs() < 1e-3);
        assert!((post.sd_log - 0.7).abs() < 1e-3);
    }
}
