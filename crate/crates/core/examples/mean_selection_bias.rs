//! Replications that reach a verdict under-estimate the spread of the data
//! at small sample sizes. Means 10 and 11, sd 3, unit-width hypotheses.

use twoit::simulation::{bias_quantiles, bias_table_grid, bimodality_coefficient, mc_mean_oc, Truth};

fn main() -> twoit::Result<()> {
    let grid = bias_table_grid(vec![120, 250, 400], 2000, 7)?;
    let (_, records) = mc_mean_oc(&grid, 1)?;
    let (rows, warnings) = bias_quantiles(&records, [0.025, 0.5, 0.975]);
    for w in warnings {
        println!("warning: {w}");
    }
    println!("{:>4} {:>3} {:>8} {:>6} {:>8} {:>8}", "N", "H", "accepted", "count", "mean50", "sd50");
    for r in rows.iter().filter(|r| r.truth == Truth::Ha) {
        println!(
            "{:>4} {:>3} {:>8} {:>6} {:>8.3} {:>8.3}",
            r.n,
            r.truth.as_str(),
            r.accepted,
            r.count,
            r.mean_q[1],
            r.sd_q[1]
        );
    }
    for n in [250, 400] {
        let rejected: Vec<f64> = records
            .iter()
            .filter(|r| r.n == n && r.truth == Truth::Ha && !r.accepted)
            .map(|r| r.sample_mean)
            .collect();
        println!("N = {n}: bimodality coefficient of rejected means = {:.3}", bimodality_coefficient(&rejected));
    }
    Ok(())
}
