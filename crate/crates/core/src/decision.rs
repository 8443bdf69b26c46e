//! Verdicts: turning a posterior summary into one of the test outcomes.
//!
//! Under the probability-threshold rule a hypothesis is accepted when its
//! posterior mass reaches `π`; under the credible-interval rule it is
//! accepted when the credible interval lies inside it. When neither is
//! accepted, a credible interval that is shorter than at least one of the
//! hypotheses yet contained in neither points to an unforeseen effect
//! (serendipity); anything else is a lack of power.

use rand_distr::{Beta, Distribution, StandardNormal};
use serde::{Serialize, Serializer};

use crate::error::{validation, Error, Result};
use crate::hypothesis::{DecisionRule, HypothesisPair, IntervalHypothesis, Region, Scale};
use crate::numerics::{normal_cdf, student_t_cdf, ScaledInvChi2, SeededStream};
use crate::posterior::{
    beta_interval_mass, BetaPosterior, BetaPrior, NormalPrior, PosteriorSummary, RatioMeasure, MIN_DRAWS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    AcceptHp,
    AcceptHa,
    Serendipity,
    InsufficientPower,
    AmbiguousOverlap,
}

impl Outcome {
    pub const ALL: [Outcome; 5] = [
        Outcome::AcceptHp,
        Outcome::AcceptHa,
        Outcome::Serendipity,
        Outcome::InsufficientPower,
        Outcome::AmbiguousOverlap,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::AcceptHp => "accept_hp",
            Outcome::AcceptHa => "accept_ha",
            Outcome::Serendipity => "serendipity",
            Outcome::InsufficientPower => "insufficient_power",
            Outcome::AmbiguousOverlap => "ambiguous_overlap",
        }
    }

    /// Whether the decision criterion for `H_P` was met (alone or together with `H_A`).
    pub fn accepts_hp(&self) -> bool {
        matches!(self, Outcome::AcceptHp | Outcome::AmbiguousOverlap)
    }

    pub fn accepts_ha(&self) -> bool {
        matches!(self, Outcome::AcceptHa | Outcome::AmbiguousOverlap)
    }
}

/// A ratio of two probabilities that may have a zero denominator.
///
/// Serialises as a number, the string `"inf"`, or `null` when both terms are
/// zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ratio {
    Finite(f64),
    Infinite,
    Undefined,
}

impl Ratio {
    fn of(num: f64, den: f64) -> Self {
        if den > 0.0 {
            Ratio::Finite(num / den)
        } else if num > 0.0 {
            Ratio::Infinite
        } else {
            Ratio::Undefined
        }
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            Ratio::Finite(v) => Some(v),
            Ratio::Infinite => Some(f64::INFINITY),
            Ratio::Undefined => None,
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Ratio::Finite(v) => s.serialize_f64(v),
            Ratio::Infinite => s.serialize_str("inf"),
            Ratio::Undefined => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub mass_hp: f64,
    pub mass_ha: f64,
    pub posterior_ratio: Ratio,
    pub bayes_factor: Option<Ratio>,
    pub cri_length: f64,
    pub rule_used: DecisionRule,
    /// `π/2 < Pr(H_P|D) < π`: some support for `H_P` that falls short of the threshold.
    pub trend: bool,
    pub notes: Vec<String>,
}

impl Verdict {
    /// Attach the Bayes factor computed from the prior masses of the two hypotheses.
    pub fn with_bayes_factor(mut self, prior_mass_hp: f64, prior_mass_ha: f64) -> Result<Self> {
        let bf = bayes_factor_from_masses(prior_mass_hp, prior_mass_ha, self.mass_hp, self.mass_ha)?;
        self.bayes_factor = Some(bf);
        Ok(self)
    }
}

/// Which hypotheses meet the configured acceptance criterion.
fn accepted(summary: &PosteriorSummary, pair: &HypothesisPair) -> (bool, bool) {
    match pair.rule {
        DecisionRule::ProbabilityThreshold => (summary.mass_hp >= pair.pi, summary.mass_ha >= pair.pi),
        DecisionRule::CriInclusion => (
            pair.h_p.contains_interval(summary.cri.lower, summary.cri.upper),
            pair.h_a.contains_interval(summary.cri.lower, summary.cri.upper),
        ),
    }
}

pub fn evaluate(summary: &PosteriorSummary, pair: &HypothesisPair) -> Result<Verdict> {
    if summary.scale != pair.scale() {
        return Err(validation(format!(
            "summary is on the {:?} scale but the hypotheses are on the {:?} scale",
            summary.scale,
            pair.scale()
        )));
    }
    let (lo, hi) = (summary.cri.lower, summary.cri.upper);
    let l_s = summary.cri.length();
    let (l_p, l_a) = (pair.h_p.length(), pair.h_a.length());
    let mut notes = Vec::new();

    let outcome = match accepted(summary, pair) {
        (true, true) => Outcome::AmbiguousOverlap,
        (true, false) => Outcome::AcceptHp,
        (false, true) => Outcome::AcceptHa,
        (false, false) => {
            let precise = l_s < l_p || l_s < l_a;
            let outside_both = !pair.h_p.contains_interval(lo, hi) && !pair.h_a.contains_interval(lo, hi);
            let weak = summary.mass_hp < pair.pi && summary.mass_ha < pair.pi;
            if (l_s < l_p) != (l_s < l_a) {
                let tighter = if l_s < l_p { &pair.h_p } else { &pair.h_a };
                if straddles(tighter, lo, hi) {
                    notes.push(format!(
                        "credible interval straddles a bound of the only hypothesis it is shorter than ({}, {}); \
                         classified by the non-containment rule",
                        tighter.lower, tighter.upper
                    ));
                }
            }
            if precise && outside_both && weak {
                Outcome::Serendipity
            } else {
                Outcome::InsufficientPower
            }
        }
    };

    let trend = summary.mass_hp > pair.pi / 2.0 && summary.mass_hp < pair.pi;
    if trend {
        notes.push(format!("trend towards H_P: {:.4} lies between pi/2 and pi", summary.mass_hp));
    }

    Ok(Verdict {
        outcome,
        mass_hp: summary.mass_hp,
        mass_ha: summary.mass_ha,
        posterior_ratio: posterior_ratio(summary),
        bayes_factor: None,
        cri_length: l_s,
        rule_used: pair.rule,
        trend,
        notes,
    })
}

fn straddles(h: &IntervalHypothesis, lo: f64, hi: f64) -> bool {
    let crosses = |b: f64| lo < b && b < hi;
    crosses(h.lower) || crosses(h.upper)
}

/// `Pr(H_P|D) / Pr(H_A|D)`.
pub fn posterior_ratio(summary: &PosteriorSummary) -> Ratio {
    Ratio::of(summary.mass_hp, summary.mass_ha)
}

/// Posterior odds of `H_P` against `H_A` divided by their prior odds.
pub fn bayes_factor(prior_mass_hp: f64, prior_mass_ha: f64, summary: &PosteriorSummary) -> Result<Ratio> {
    bayes_factor_from_masses(prior_mass_hp, prior_mass_ha, summary.mass_hp, summary.mass_ha)
}

fn bayes_factor_from_masses(prior_hp: f64, prior_ha: f64, post_hp: f64, post_ha: f64) -> Result<Ratio> {
    if !(prior_hp > 0.0 && prior_ha > 0.0) {
        return Err(Error::UndefinedBayesFactor(format!(
            "prior masses must be positive, got ({prior_hp}, {prior_ha})"
        )));
    }
    Ok(match Ratio::of(post_hp, post_ha) {
        Ratio::Finite(odds) => Ratio::Finite(odds * prior_ha / prior_hp),
        other => other,
    })
}

/// Prior used by an engine, for computing prior masses of the hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriorSpec {
    OneProp(BetaPrior),
    TwoPropDiff(BetaPrior),
    TwoPropRatio { prior: BetaPrior, measure: RatioMeasure },
    Mean(NormalPrior),
    MeanDiff(NormalPrior, NormalPrior),
    /// Zero-mean normal prior on the log of a ratio.
    LogNormal { sd: f64 },
}

impl PriorSpec {
    fn check_proper(&self) -> Result<()> {
        let proper = match self {
            PriorSpec::OneProp(p) | PriorSpec::TwoPropDiff(p) | PriorSpec::TwoPropRatio { prior: p, .. } => {
                p.is_proper()
            }
            PriorSpec::Mean(p) => p.is_proper(),
            PriorSpec::MeanDiff(a, b) => a.is_proper() && b.is_proper(),
            PriorSpec::LogNormal { sd } => sd.is_finite() && *sd > 0.0,
        };
        if proper {
            Ok(())
        } else {
            Err(Error::UndefinedPriorMass(format!("{self:?} is improper")))
        }
    }

    fn scale(&self) -> Scale {
        match self {
            PriorSpec::TwoPropRatio { .. } | PriorSpec::LogNormal { .. } => Scale::Log,
            _ => Scale::Natural,
        }
    }
}

fn region_mass(inside: f64, region: Region) -> f64 {
    match region {
        Region::Inside => inside,
        Region::Outside => 1.0 - inside,
    }
}

/// Prior probabilities of `H_P` and `H_A`: exact for one proportion, one
/// mean and the log-normal prior, Monte Carlo fractions otherwise.
pub fn prior_interval_mass(
    spec: &PriorSpec,
    pair: &HypothesisPair,
    draws: usize,
    stream: SeededStream,
) -> Result<(f64, f64)> {
    spec.check_proper()?;
    if spec.scale() != pair.scale() {
        return Err(validation("prior and hypotheses are on different scales"));
    }
    let exact = |f: &dyn Fn(&IntervalHypothesis) -> Result<f64>| -> Result<(f64, f64)> {
        Ok((f(&pair.h_p)?, f(&pair.h_a)?))
    };
    match *spec {
        PriorSpec::OneProp(p) => {
            let post = BetaPosterior { a: p.a, b: p.b };
            exact(&|h| Ok(beta_interval_mass(&post, h)?.mass))
        }
        PriorSpec::Mean(p) => {
            let scale = (p.sigma0_sq / p.kappa0).sqrt();
            exact(&|h| {
                let cdf = |x: f64| student_t_cdf((x - p.mu0) / scale, p.nu0);
                Ok(region_mass((cdf(h.upper)? - cdf(h.lower)?).max(0.0), h.region))
            })
        }
        PriorSpec::LogNormal { sd } => exact(&|h| {
            let inside = normal_cdf(h.upper.ln() / sd) - normal_cdf(h.lower.ln() / sd);
            Ok(region_mass(inside.max(0.0), h.region))
        }),
        PriorSpec::TwoPropDiff(p) => {
            let beta = beta_dist(p)?;
            mc_fractions(pair, draws, stream, |rng| beta.sample(rng) - beta.sample(rng))
        }
        PriorSpec::TwoPropRatio { prior, measure } => {
            let beta = beta_dist(prior)?;
            mc_fractions(pair, draws, stream, |rng| {
                let (p1, p2) = (beta.sample(rng), beta.sample(rng));
                match measure {
                    RatioMeasure::RiskRatio => p1 / p2,
                    RatioMeasure::OddsRatio => p1 * (1.0 - p2) / (p2 * (1.0 - p1)),
                }
            })
        }
        PriorSpec::MeanDiff(a, b) => {
            let (va, vb) = (ScaledInvChi2::new(a.nu0, a.sigma0_sq)?, ScaledInvChi2::new(b.nu0, b.sigma0_sq)?);
            mc_fractions(pair, draws, stream, |rng| {
                let za: f64 = StandardNormal.sample(rng);
                let zb: f64 = StandardNormal.sample(rng);
                (a.mu0 + za * (va.sample(rng) / a.kappa0).sqrt()) - (b.mu0 + zb * (vb.sample(rng) / b.kappa0).sqrt())
            })
        }
    }
}

fn beta_dist(p: BetaPrior) -> Result<Beta<f64>> {
    Beta::new(p.a, p.b).map_err(|e| Error::UndefinedPriorMass(e.to_string()))
}

fn mc_fractions(
    pair: &HypothesisPair,
    draws: usize,
    stream: SeededStream,
    mut draw: impl FnMut(&mut crate::numerics::StreamRng) -> f64,
) -> Result<(f64, f64)> {
    if draws < MIN_DRAWS {
        return Err(validation(format!("draws must be at least {MIN_DRAWS}, got {draws}")));
    }
    let mut rng = stream.rng();
    let (mut hp, mut ha) = (0usize, 0usize);
    for _ in 0..draws {
        let v = draw(&mut rng);
        hp += pair.h_p.contains(v) as usize;
        ha += pair.h_a.contains(v) as usize;
    }
    Ok((hp as f64 / draws as f64, ha as f64 / draws as f64))
}
