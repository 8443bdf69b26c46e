//! Checking baseline balance between two randomised arms. Balance (`H_A`)
//! means the difference in proportions lies within ±0.1.

use twoit::decision::evaluate;
use twoit::hypothesis::{make_pair, DecisionRule, HypothesisLabel, IntervalHypothesis, Scale};
use twoit::numerics::SeededStream;
use twoit::posterior::{two_prop_diff_posterior, BetaPrior, McOptions, TwoPropData};

fn main() -> twoit::Result<()> {
    let pair = make_pair(
        IntervalHypothesis::outside(HypothesisLabel::Present, -0.1, 0.1, Scale::Natural)?,
        IntervalHypothesis::new(HypothesisLabel::Absent, -0.1, 0.1, Scale::Natural)?,
        0.95,
        DecisionRule::ProbabilityThreshold,
        0.95,
    )?;
    for (name, x1, x2) in [("metastases", 131, 119), ("ECOG 0", 59, 62)] {
        let data = TwoPropData::new(x1, 181, x2, 181)?;
        let mc = McOptions::new(1_000_000, SeededStream::new(3, 0));
        let s = two_prop_diff_posterior(&data, BetaPrior::uniform(), &pair, &mc)?;
        let v = evaluate(&s, &pair)?;
        println!(
            "{name:>10}: diff {:+.3} [{:+.3}, {:+.3}]  Pr(balanced) = {:.3}  -> {}",
            s.point,
            s.cri.lower,
            s.cri.upper,
            s.mass_ha,
            v.outcome.as_str()
        );
    }
    Ok(())
}
