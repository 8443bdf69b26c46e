//! Building hypotheses by hand: a non-inferiority design on one proportion,
//! with an explicit prior-to-posterior Bayes factor.

use twoit::decision::{evaluate, prior_interval_mass, PriorSpec};
use twoit::hypothesis::{make_pair, DecisionRule, HypothesisLabel, IntervalHypothesis, Scale};
use twoit::numerics::SeededStream;
use twoit::posterior::{one_prop_posterior, one_prop_summary, BetaPrior};

fn main() -> twoit::Result<()> {
    // Cure rate of a reference treatment is 0.80; anything above 0.75 counts as non-inferior.
    let h_p = IntervalHypothesis::new(HypothesisLabel::Present, 0.75, 0.95, Scale::Natural)?;
    let h_a = IntervalHypothesis::new(HypothesisLabel::Absent, 0.55, 0.75, Scale::Natural)?;
    for rule in [DecisionRule::ProbabilityThreshold, DecisionRule::CriInclusion] {
        let pair = make_pair(h_p, h_a, 0.9, rule, 0.95)?;
        let prior = BetaPrior::jeffreys();
        let post = one_prop_posterior(171, 210, prior)?;
        let s = one_prop_summary(&post, &pair)?;
        let (m_hp, m_ha) = prior_interval_mass(&PriorSpec::OneProp(prior), &pair, 0, SeededStream::new(0, 1))?;
        let v = evaluate(&s, &pair)?.with_bayes_factor(m_hp, m_ha)?;
        println!("{rule:?}");
        println!("  posterior {:.3} [{:.3}, {:.3}]", s.point, s.cri.lower, s.cri.upper);
        println!("  Pr(H_P|D) = {:.3}, Pr(H_A|D) = {:.3}", v.mass_hp, v.mass_ha);
        println!("  Bayes factor = {:?}", v.bayes_factor);
        println!("  outcome = {}, notes = {:?}", v.outcome.as_str(), v.notes);
    }
    Ok(())
}
