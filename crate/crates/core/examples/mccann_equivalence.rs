//! Equivalence of two groups' mean IQ within five points.
//!
//! The group sizes were not published; 242 and 205 reproduce the reported
//! credible interval of the difference.

use twoit::decision::{evaluate, posterior_ratio};
use twoit::hypothesis::{make_pair, DecisionRule, HypothesisLabel, IntervalHypothesis, Scale};
use twoit::numerics::SeededStream;
use twoit::posterior::{mean_diff_two_groups, McOptions, NormalPrior, SampleStats};

fn main() -> twoit::Result<()> {
    let h_p = IntervalHypothesis::new(HypothesisLabel::Present, -5.0, 5.0, Scale::Natural)?;
    let h_a = IntervalHypothesis::outside(HypothesisLabel::Absent, -5.0, 5.0, Scale::Natural)?;
    let pair = make_pair(h_p, h_a, 0.95, DecisionRule::ProbabilityThreshold, 0.95)?;

    let g1 = SampleStats::new(242, 99.08, 18.35f64.powi(2))?;
    let g2 = SampleStats::new(205, 98.97, 19.66f64.powi(2))?;
    let prior = NormalPrior::low_informative();
    let mc = McOptions::new(1_000_000, SeededStream::new(11, 0));
    let s = mean_diff_two_groups(&g1, &g2, &prior, &prior, &pair, &mc)?;
    let v = evaluate(&s, &pair)?;

    println!("difference {:.2} [{:.2}, {:.2}]", s.point, s.cri.lower, s.cri.upper);
    println!("Pr(|d| < 5) = {:.4}, ratio = {:.0}", s.mass_hp, posterior_ratio(&s).value().unwrap_or(f64::NAN));
    println!("verdict: {}", v.outcome.as_str());
    Ok(())
}
