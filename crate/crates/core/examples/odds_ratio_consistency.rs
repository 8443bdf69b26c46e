//! Three published odds ratios re-read through the two-interval test using
//! only the point estimate and its 95% confidence interval.

use twoit::cli::{or_pair, OR_STUDIES};
use twoit::decision::evaluate;
use twoit::posterior::{default_prior_sd_log, summary_log_posterior};

fn main() -> twoit::Result<()> {
    let pair = or_pair()?;
    let sd = default_prior_sd_log();
    println!("prior: log OR ~ N(0, {sd:.3}^2), i.e. 95% of its mass within [1/20, 20]");
    for (i, (or, ci, ..)) in OR_STUDIES.iter().enumerate() {
        let s = summary_log_posterior(*or, *ci, 0.95, sd, &pair)?;
        let v = evaluate(&s, &pair)?;
        println!(
            "study {}: OR {or} [{}, {}] -> {:.2} [{:.2}, {:.2}]  Pr(H_P) = {:.3}  Pr(H_A) = {:.3}  {}",
            i + 1,
            ci.0,
            ci.1,
            s.point,
            s.cri.lower,
            s.cri.upper,
            s.mass_hp,
            s.mass_ha,
            v.outcome.as_str()
        );
    }
    Ok(())
}
