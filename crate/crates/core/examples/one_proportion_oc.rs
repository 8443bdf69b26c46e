//! Exact operating characteristics for a single proportion: 0.3 under
//! `H_A`, 0.5 under `H_P`, intervals of width 0.2 around each, under both
//! decision rules.

use twoit::hypothesis::DecisionRule;
use twoit::simulation::{exact_one_prop_oc, one_prop_paper_scenarios};

fn main() -> twoit::Result<()> {
    for rule in [DecisionRule::CriInclusion, DecisionRule::ProbabilityThreshold] {
        let grid = one_prop_paper_scenarios(0.2, rule)?
            .into_iter()
            .find(|g| g.truth_a == 0.3 && g.truth_p == 0.5)
            .expect("scenario present");
        println!("{}", grid.scenario_id);
        println!("{:>5} {:>10} {:>10} {:>10} {:>10}", "N", "P(HA|HA)", "P(HP|HA)", "P(HP|HP)", "P(HA|HP)");
        for p in exact_one_prop_oc(&grid)?.iter().filter(|p| p.n % 100 == 0) {
            println!(
                "{:>5} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
                p.n,
                p.p_ha_given_ha(),
                p.p_hp_given_ha(),
                p.p_hp_given_hp(),
                p.p_ha_given_hp()
            );
        }
    }
    Ok(())
}
