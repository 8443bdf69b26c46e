//! Relative risk of smoking abstinence, e-cigarettes against nicotine
//! replacement: 79/438 against 44/446, hypotheses built from a target risk
//! ratio of 1.7.
//!
//! ```text
//! cargo run --example hajek_relative_risk
//! ```

use twoit::decision::{evaluate, posterior_ratio};
use twoit::hypothesis::{ratio_pair_from_target, DecisionRule};
use twoit::numerics::SeededStream;
use twoit::posterior::{two_prop_ratio_posterior, BetaPrior, McOptions, RatioMeasure, TwoPropData};

fn main() -> twoit::Result<()> {
    let pair = ratio_pair_from_target(1.7, 0.95, DecisionRule::ProbabilityThreshold)?;
    println!(
        "H_A = [{:.3}, {:.3}]  H_P = [{:.3}, {:.3}]",
        pair.h_a.lower, pair.h_a.upper, pair.h_p.lower, pair.h_p.upper
    );

    let data = TwoPropData::new(79, 438, 44, 446)?;
    let mc = McOptions::new(1_000_000, SeededStream::new(2019, 0));
    let s = two_prop_ratio_posterior(&data, RatioMeasure::RiskRatio, BetaPrior::uniform(), &pair, &mc)?;
    let v = evaluate(&s, &pair)?;

    println!("posterior RR {:.2} [{:.2}, {:.2}]", s.point, s.cri.lower, s.cri.upper);
    println!("Pr(H_P | D) = {:.3}", s.mass_hp);
    println!("Pr(H_A | D) = {:.3}", s.mass_ha);
    println!("ratio       = {:.1}", posterior_ratio(&s).value().unwrap_or(f64::NAN));
    println!("verdict     = {} (trend: {})", v.outcome.as_str(), v.trend);
    Ok(())
}
