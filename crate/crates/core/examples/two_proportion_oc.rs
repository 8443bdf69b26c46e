//! Simulated power of a superiority test of 0.7 against 0.5.
//!
//! ```text
//! cargo run --release --example two_proportion_oc -- 500
//! ```
//! The optional argument is the number of replications per cell.

use twoit::simulation::{mc_two_prop_oc, two_prop_paper_grid};

fn main() -> twoit::Result<()> {
    let n_sims = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let mut grid = two_prop_paper_grid(vec![20, 100, 200, 400], n_sims, 42)?;
    grid.draws = 20_000;
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    println!("{} replications per cell, {} posterior draws each", grid.n_sims, grid.draws);
    for p in mc_two_prop_oc(&grid, workers)? {
        println!(
            "N = {:>4}: Pr(H_P | H_A) = {:.3}  Pr(H_P | H_P) = {:.3}  serendipity | H_P = {:.3}",
            p.n,
            p.p_hp_given_ha(),
            p.p_hp_given_hp(),
            p.given_hp.serendipity
        );
    }
    Ok(())
}
