//! Interval hypotheses and the pair `(H_P, H_A)` a test is run against.
//!
//! The three classical situations are interval placements, not separate
//! procedures:
//!
//! - **Superiority**: `H_A` sits around the no-effect value (0 for a
//!   difference, 1 for a ratio) and `H_P` around the effect size the study
//!   was powered for, e.g. `ratio_pair_from_target(1.7, ..)`.
//! - **Non-inferiority**: `H_P` covers the values where the new treatment is
//!   not clinically worse, `H_A` the values where it is.
//! - **Equivalence**: `H_P` is the equivalence margin around zero and `H_A`
//!   covers differences too large to be equivalent, possibly as the
//!   two-sided exterior of the margin ([`Region::Outside`]).

use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisLabel {
    Present,
    Absent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Natural,
    Log,
}

/// Which side of the bounds the hypothesis covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// `lower <= θ <= upper`
    #[default]
    Inside,
    /// `θ <= lower` or `θ >= upper`
    Outside,
}

/// A labeled closed interval of parameter values.
///
/// On the log scale bounds are stored in natural units (ratios), and must be
/// positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IntervalRepr")]
pub struct IntervalHypothesis {
    pub label: HypothesisLabel,
    pub lower: f64,
    pub upper: f64,
    pub scale: Scale,
    #[serde(default)]
    pub region: Region,
}

#[derive(Deserialize)]
struct IntervalRepr {
    label: HypothesisLabel,
    lower: f64,
    upper: f64,
    scale: Scale,
    #[serde(default)]
    region: Region,
}

impl TryFrom<IntervalRepr> for IntervalHypothesis {
    type Error = Error;

    fn try_from(r: IntervalRepr) -> Result<Self> {
        Self::with_region(r.label, r.lower, r.upper, r.scale, r.region)
    }
}

impl IntervalHypothesis {
    pub fn new(label: HypothesisLabel, lower: f64, upper: f64, scale: Scale) -> Result<Self> {
        Self::with_region(label, lower, upper, scale, Region::Inside)
    }

    /// The two-sided exterior `θ <= lower or θ >= upper`.
    pub fn outside(label: HypothesisLabel, lower: f64, upper: f64, scale: Scale) -> Result<Self> {
        Self::with_region(label, lower, upper, scale, Region::Outside)
    }

    pub fn with_region(
        label: HypothesisLabel,
        lower: f64,
        upper: f64,
        scale: Scale,
        region: Region,
    ) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(validation(format!("interval bounds must be finite, got [{lower}, {upper}]")));
        }
        if lower >= upper {
            return Err(validation(format!("interval lower bound must be below upper bound, got [{lower}, {upper}]")));
        }
        if scale == Scale::Log && lower <= 0.0 {
            return Err(validation(format!("log-scale interval needs a positive lower bound, got {lower}")));
        }
        Ok(Self { label, lower, upper, scale, region })
    }

    /// Length of the covered set; infinite for an exterior region.
    pub fn length(&self) -> f64 {
        match self.region {
            Region::Inside => self.upper - self.lower,
            Region::Outside => f64::INFINITY,
        }
    }

    pub fn contains(&self, theta: f64) -> bool {
        match self.region {
            Region::Inside => self.lower <= theta && theta <= self.upper,
            Region::Outside => theta <= self.lower || theta >= self.upper,
        }
    }

    /// Whether `[lo, hi]` lies entirely within the hypothesis.
    pub fn contains_interval(&self, lo: f64, hi: f64) -> bool {
        match self.region {
            Region::Inside => self.lower <= lo && hi <= self.upper,
            Region::Outside => hi <= self.lower || lo >= self.upper,
        }
    }

    /// True when the two sets share at most boundary points.
    pub fn is_disjoint_from(&self, other: &IntervalHypothesis) -> bool {
        match (self.region, other.region) {
            (Region::Inside, Region::Inside) => self.upper <= other.lower || other.upper <= self.lower,
            (Region::Inside, Region::Outside) => other.lower <= self.lower && self.upper <= other.upper,
            (Region::Outside, Region::Inside) => other.is_disjoint_from(self),
            (Region::Outside, Region::Outside) => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionRule {
    /// Accept `H_X` when `Pr(H_X | D) >= π`.
    ProbabilityThreshold,
    /// Accept `H_X` when the equal-tailed credible interval lies inside `H_X`.
    CriInclusion,
}

/// `H_P` and `H_A` together with the acceptance threshold `π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PairRepr")]
pub struct HypothesisPair {
    pub h_p: IntervalHypothesis,
    pub h_a: IntervalHypothesis,
    pub pi: f64,
    pub rule: DecisionRule,
    pub cri_level: f64,
    /// Derived on construction; ignored when deserializing.
    pub disjoint: bool,
}

#[derive(Deserialize)]
struct PairRepr {
    h_p: IntervalHypothesis,
    h_a: IntervalHypothesis,
    pi: f64,
    rule: DecisionRule,
    #[serde(default = "default_cri_level")]
    cri_level: f64,
    #[serde(default)]
    #[allow(dead_code)]
    disjoint: Option<bool>,
}

fn default_cri_level() -> f64 {
    0.95
}

impl TryFrom<PairRepr> for HypothesisPair {
    type Error = Error;

    fn try_from(r: PairRepr) -> Result<Self> {
        make_pair(r.h_p, r.h_a, r.pi, r.rule, r.cri_level)
    }
}

impl HypothesisPair {
    pub fn scale(&self) -> Scale {
        self.h_p.scale
    }
}

/// Validate and assemble a hypothesis pair.
pub fn make_pair(
    h_p: IntervalHypothesis,
    h_a: IntervalHypothesis,
    pi: f64,
    rule: DecisionRule,
    cri_level: f64,
) -> Result<HypothesisPair> {
    if !(pi > 0.5) {
        return Err(validation("pi must exceed 0.5"));
    }
    if pi > 1.0 {
        return Err(validation(format!("pi must not exceed 1, got {pi}")));
    }
    if !(cri_level > 0.0 && cri_level < 1.0) {
        return Err(validation(format!("cri_level must lie in (0, 1), got {cri_level}")));
    }
    if h_p.label != HypothesisLabel::Present || h_a.label != HypothesisLabel::Absent {
        return Err(validation("h_p must be labeled present and h_a absent"));
    }
    if h_p.scale != h_a.scale {
        return Err(validation("h_p and h_a must use the same scale"));
    }
    // re-check bounds in case the structs were built by hand
    for h in [&h_p, &h_a] {
        IntervalHypothesis::with_region(h.label, h.lower, h.upper, h.scale, h.region)?;
    }
    let disjoint = h_p.is_disjoint_from(&h_a);
    Ok(HypothesisPair { h_p, h_a, pi, rule, cri_level, disjoint })
}

/// Log-scale pair centred on a target ratio: `H_P` spans half a log-target
/// on each side of the target, `H_A` the same span around 1.
pub fn ratio_pair_from_target(target: f64, pi: f64, rule: DecisionRule) -> Result<HypothesisPair> {
    if !(target > 0.0 && target.is_finite()) {
        return Err(validation(format!("target ratio must be positive, got {target}")));
    }
    if target == 1.0 {
        return Err(Error::DegenerateTarget);
    }
    let half = target.ln() / 2.0;
    let (p_lo, p_hi) = order(half.exp(), (3.0 * half).exp());
    let (a_lo, a_hi) = order((-half).exp(), half.exp());
    let h_p = IntervalHypothesis::new(HypothesisLabel::Present, p_lo, p_hi, Scale::Log)?;
    let h_a = IntervalHypothesis::new(HypothesisLabel::Absent, a_lo, a_hi, Scale::Log)?;
    make_pair(h_p, h_a, pi, rule, 0.95)
}

fn order(x: f64, y: f64) -> (f64, f64) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Equal-width natural-scale intervals centred on `center_a` and `center_p`.
pub fn symmetric_pair(
    center_a: f64,
    center_p: f64,
    width: f64,
    pi: f64,
    rule: DecisionRule,
) -> Result<HypothesisPair> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(validation(format!("interval width must be positive, got {width}")));
    }
    let half = width / 2.0;
    let h_a = IntervalHypothesis::new(HypothesisLabel::Absent, center_a - half, center_a + half, Scale::Natural)?;
    let h_p = IntervalHypothesis::new(HypothesisLabel::Present, center_p - half, center_p + half, Scale::Natural)?;
    make_pair(h_p, h_a, pi, rule, 0.95)
}
