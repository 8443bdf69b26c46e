//! Beta-Binomial posteriors for one and two proportions.

use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

use super::{require_scale, summarize_draws, CredibleInterval, McOptions, Method, PosteriorSummary};
use crate::error::{invalid, Error, Result};
use crate::hypothesis::{HypothesisPair, IntervalHypothesis, Region, Scale};
use crate::numerics::{beta_quantile, reg_inc_beta, StreamRng};

/// Beta prior on a proportion. Zero shapes (Haldane) are allowed as long as
/// the data make the posterior proper.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaPrior {
    pub a: f64,
    pub b: f64,
}

impl BetaPrior {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite() && b >= 0.0 && b.is_finite()) {
            return Err(invalid(format!("beta prior shapes must be non-negative, got ({a}, {b})")));
        }
        Ok(Self { a, b })
    }

    pub fn jeffreys() -> Self {
        Self { a: 0.5, b: 0.5 }
    }

    pub fn uniform() -> Self {
        Self { a: 1.0, b: 1.0 }
    }

    pub fn is_proper(&self) -> bool {
        self.a > 0.0 && self.b > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaPosterior {
    pub a: f64,
    pub b: f64,
}

/// Conjugate update of a Beta prior with `x` successes out of `n` trials.
pub fn one_prop_posterior(x: u64, n: u64, prior: BetaPrior) -> Result<BetaPosterior> {
    if x > n {
        return Err(invalid(format!("successes ({x}) exceed trials ({n})")));
    }
    let a = prior.a + x as f64;
    let b = prior.b + (n - x) as f64;
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::DegenerateData(format!(
            "posterior Beta({a}, {b}) is improper; use a proper prior for all-success or all-failure data"
        )));
    }
    Ok(BetaPosterior { a, b })
}

/// Posterior mass of an interval, with a flag raised when the interval had
/// to be clamped to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalMass {
    pub mass: f64,
    pub clamped: bool,
}

pub fn beta_interval_mass(post: &BetaPosterior, interval: &IntervalHypothesis) -> Result<IntervalMass> {
    let lo = interval.lower.clamp(0.0, 1.0);
    let hi = interval.upper.clamp(0.0, 1.0);
    let clamped = lo != interval.lower || hi != interval.upper;
    let inside = (reg_inc_beta(hi, post.a, post.b)? - reg_inc_beta(lo, post.a, post.b)?).max(0.0);
    let mass = match interval.region {
        Region::Inside => inside,
        Region::Outside => 1.0 - inside,
    };
    Ok(IntervalMass { mass, clamped })
}

/// Exact summary of a one-proportion posterior.
pub fn one_prop_summary(post: &BetaPosterior, pair: &HypothesisPair) -> Result<PosteriorSummary> {
    require_scale(pair, Scale::Natural, "one-proportion test")?;
    let alpha = 1.0 - pair.cri_level;
    let lower = beta_quantile(alpha / 2.0, post.a, post.b)?;
    let point = beta_quantile(0.5, post.a, post.b)?;
    let upper = beta_quantile(1.0 - alpha / 2.0, post.a, post.b)?;
    let hp = beta_interval_mass(post, &pair.h_p)?;
    let ha = beta_interval_mass(post, &pair.h_a)?;
    let mut warnings = Vec::new();
    for (name, m, h) in [("h_p", hp, &pair.h_p), ("h_a", ha, &pair.h_a)] {
        if m.clamped {
            warnings.push(format!("{name} [{}, {}] clamped to [0, 1]", h.lower, h.upper));
        }
    }
    Ok(PosteriorSummary {
        point,
        cri: CredibleInterval { lower, upper, level: pair.cri_level },
        mass_hp: hp.mass,
        mass_ha: ha.mass,
        scale: Scale::Natural,
        method: Method::Exact,
        warnings,
    })
}

/// Successes and trials in two independent groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPropData {
    pub x1: u64,
    pub n1: u64,
    pub x2: u64,
    pub n2: u64,
}

impl TwoPropData {
    pub fn new(x1: u64, n1: u64, x2: u64, n2: u64) -> Result<Self> {
        if x1 > n1 || x2 > n2 {
            return Err(invalid(format!("successes exceed trials: {x1}/{n1}, {x2}/{n2}")));
        }
        Ok(Self { x1, n1, x2, n2 })
    }

    /// Group 2 as group 1 and vice versa.
    pub fn swapped(&self) -> Self {
        Self { x1: self.x2, n1: self.n2, x2: self.x1, n2: self.n1 }
    }

    fn posteriors(&self, prior: BetaPrior) -> Result<(Beta<f64>, Beta<f64>)> {
        let p1 = one_prop_posterior(self.x1, self.n1, prior)?;
        let p2 = one_prop_posterior(self.x2, self.n2, prior)?;
        let mk = |p: BetaPosterior| Beta::new(p.a, p.b).map_err(|e| invalid(format!("beta posterior: {e}")));
        Ok((mk(p1)?, mk(p2)?))
    }
}

/// Monte Carlo posterior of `δ = p1 - p2` under independent Beta posteriors.
pub fn two_prop_diff_posterior(
    data: &TwoPropData,
    prior: BetaPrior,
    pair: &HypothesisPair,
    mc: &McOptions,
) -> Result<PosteriorSummary> {
    mc.validate()?;
    two_prop_diff_with_rng(data, prior, pair, mc.draws, &mut mc.stream.rng(), mc.method())
}

/// Same as [`two_prop_diff_posterior`], continuing an existing random stream.
pub(crate) fn two_prop_diff_with_rng(
    data: &TwoPropData,
    prior: BetaPrior,
    pair: &HypothesisPair,
    draws: usize,
    rng: &mut StreamRng,
    method: Method,
) -> Result<PosteriorSummary> {
    require_scale(pair, Scale::Natural, "two-proportion difference")?;
    let (b1, b2) = data.posteriors(prior)?;
    let draws = (0..draws).map(|_| b1.sample(rng) - b2.sample(rng)).collect();
    Ok(summarize_draws(draws, pair, Scale::Natural, method))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RatioMeasure {
    #[serde(rename = "rr")]
    RiskRatio,
    #[serde(rename = "or")]
    OddsRatio,
}

/// Monte Carlo posterior of the risk ratio `p1 / p2` or the odds ratio.
pub fn two_prop_ratio_posterior(
    data: &TwoPropData,
    measure: RatioMeasure,
    prior: BetaPrior,
    pair: &HypothesisPair,
    mc: &McOptions,
) -> Result<PosteriorSummary> {
    mc.validate()?;
    require_scale(pair, Scale::Log, "ratio posterior")?;
    if data.n2 == 0 {
        return Err(invalid("reference group must have at least one trial"));
    }
    let (b1, b2) = data.posteriors(prior)?;
    let mut rng = mc.stream.rng();
    let draws = (0..mc.draws)
        .map(|_| {
            let p1 = b1.sample(&mut rng);
            let p2 = b2.sample(&mut rng);
            match measure {
                RatioMeasure::RiskRatio => p1 / p2,
                RatioMeasure::OddsRatio => (p1 * (1.0 - p2)) / (p2 * (1.0 - p1)),
            }
        })
        .collect();
    Ok(summarize_draws(draws, pair, Scale::Log, mc.method()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::{symmetric_pair, DecisionRule, HypothesisLabel};
    use crate::numerics::SeededStream;

    fn iv(lo: f64, hi: f64) -> IntervalHypothesis {
        IntervalHypothesis::new(HypothesisLabel::Present, lo, hi, Scale::Natural).unwrap()
    }

    #[test]
    fn conjugate_updates() {
        assert_eq!(one_prop_posterior(0, 0, BetaPrior::jeffreys()).unwrap(), BetaPosterior { a: 0.5, b: 0.5 });
        assert_eq!(one_prop_posterior(5, 10, BetaPrior::jeffreys()).unwrap(), BetaPosterior { a: 5.5, b: 5.5 });
        assert_eq!(one_prop_posterior(79, 438, BetaPrior::uniform()).unwrap(), BetaPosterior { a: 80.0, b: 360.0 });
        assert!(one_prop_posterior(11, 10, BetaPrior::uniform()).is_err());
    }

    #[test]
    fn haldane_prior_needs_mixed_data() {
        let haldane = BetaPrior::new(0.0, 0.0).unwrap();
        assert!(matches!(one_prop_posterior(0, 10, haldane), Err(Error::DegenerateData(_))));
        assert!(one_prop_posterior(3, 10, haldane).is_ok());
    }

    #[test]
    fn trivial_masses() {
        let post = BetaPosterior { a: 3.0, b: 3.0 };
        assert!((beta_interval_mass(&post, &iv(0.0, 1.0)).unwrap().mass - 1.0).abs() < 1e-14);
        assert!((beta_interval_mass(&post, &iv(0.0, 0.5)).unwrap().mass - 0.5).abs() < 1e-14);
        let clamped = beta_interval_mass(&post, &iv(-0.2, 0.5)).unwrap();
        assert!(clamped.clamped);
        assert!((clamped.mass - 0.5).abs() < 1e-14);
    }

    #[test]
    fn exterior_mass_is_complement() {
        let post = BetaPosterior { a: 12.0, b: 30.0 };
        let inside = beta_interval_mass(&post, &iv(0.2, 0.35)).unwrap().mass;
        let out = IntervalHypothesis::outside(HypothesisLabel::Present, 0.2, 0.35, Scale::Natural).unwrap();
        let outside = beta_interval_mass(&post, &out).unwrap().mass;
        assert!((inside + outside - 1.0).abs() < 1e-14);
    }

    #[test]
    fn one_prop_summary_brackets_point() {
        let pair = symmetric_pair(0.5, 0.7, 0.2, 0.95, DecisionRule::CriInclusion).unwrap();
        let post = one_prop_posterior(60, 100, BetaPrior::jeffreys()).unwrap();
        let s = one_prop_summary(&post, &pair).unwrap();
        assert!(s.cri.lower < s.point && s.point < s.cri.upper);
        assert!(s.mass_hp + s.mass_ha <= 1.0 + 1e-12);
        assert!(s.warnings.is_empty());
    }

    #[test]
    fn draw_floor_enforced() {
        let pair = symmetric_pair(0.0, 0.2, 0.2, 0.95, DecisionRule::ProbabilityThreshold).unwrap();
        let data = TwoPropData::new(5, 10, 5, 10).unwrap();
        let mc = McOptions::new(9_999, SeededStream::new(1, 0));
        assert!(two_prop_diff_posterior(&data, BetaPrior::jeffreys(), &pair, &mc).is_err());
    }

    #[test]
    fn equal_groups_center_on_zero() {
        let pair = symmetric_pair(0.0, 0.2, 0.2, 0.95, DecisionRule::ProbabilityThreshold).unwrap();
        let data = TwoPropData::new(40, 100, 40, 100).unwrap();
        let mc = McOptions::new(100_000, SeededStream::new(3, 0));
        let s = two_prop_diff_posterior(&data, BetaPrior::uniform(), &pair, &mc).unwrap();
        assert!(s.point.abs() < 0.003, "median {}", s.point);
    }

    #[test]
    fn scale_mismatch_rejected() {
        let pair = symmetric_pair(0.0, 0.2, 0.2, 0.95, DecisionRule::ProbabilityThreshold).unwrap();
        let data = TwoPropData::new(40, 100, 40, 100).unwrap();
        let mc = McOptions::new(10_000, SeededStream::new(3, 0));
        assert!(two_prop_ratio_posterior(&data, RatioMeasure::RiskRatio, BetaPrior::uniform(), &pair, &mc).is_err());
    }
}
