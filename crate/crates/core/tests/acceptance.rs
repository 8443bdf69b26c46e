//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails. All randomness uses `SEED`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use twoit::cli::{example1, example2, example3, or_consistency, or_pair, tables, ReplicationReport, OR_STUDIES};
use twoit::decision::{evaluate, Outcome};
use twoit::hypothesis::{make_pair, symmetric_pair, DecisionRule, HypothesisLabel, IntervalHypothesis, Scale};
use twoit::numerics::SeededStream;
use twoit::posterior::{BetaPrior, CredibleInterval, Method, PosteriorSummary};
use twoit::simulation::{
    exact_one_prop_oc, mc_one_prop_oc, mc_two_prop_oc, one_prop_paper_scenarios, two_prop_paper_grid, GridPrior,
    OCPoint, ScenarioGrid, Situation, ONE_PROP_WIDTHS,
};

const SEED: u64 = 20_200_101;
const DRAWS: usize = 1_000_000;

type Check = Result<(bool, String), String>;

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn report_line(r: &ReplicationReport) -> (bool, String) {
    let detail = r
        .items
        .iter()
        .filter(|i| i.pass.is_some())
        .map(|i| format!("{}={:.4}{}", i.name, i.computed, if i.pass == Some(false) { "(out)" } else { "" }))
        .collect::<Vec<_>>()
        .join(" ");
    (r.pass, detail)
}

fn c1() -> Check {
    let r = example1(SEED, DRAWS).map_err(|e| e.to_string())?;
    Ok(report_line(&r))
}

fn c2() -> Check {
    let r = example2(SEED, DRAWS).map_err(|e| e.to_string())?;
    let (pass, detail) = report_line(&r);
    let flagged = r.warnings.iter().any(|w| w.contains("group sizes derived"));
    Ok((pass && flagged, format!("{detail} derived_n_flagged={flagged}")))
}

fn c3() -> Check {
    let r = example3(SEED, DRAWS).map_err(|e| e.to_string())?;
    Ok(report_line(&r))
}

fn phi(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

fn c4() -> Check {
    let r = or_consistency().map_err(|e| e.to_string())?;
    let pair = or_pair().map_err(|e| e.to_string())?;
    let sd_prior = 20f64.ln() / 1.96;
    let z975 = 1.959_963_984_540_054;
    let mut worst = 0.0f64;
    for (k, &(or, ci, ..)) in OR_STUDIES.iter().enumerate() {
        let se = (ci.1 / ci.0).ln() / (2.0 * z975);
        let prec = se.powi(-2) + sd_prior.powi(-2);
        let m = or.ln() * se.powi(-2) / prec;
        let s = prec.sqrt().recip();
        let mass = |lo: f64, hi: f64| phi((hi.ln() - m) / s) - phi((lo.ln() - m) / s);
        for (tag, lo, hi) in [("mass_hp", pair.h_p.lower, pair.h_p.upper), ("mass_ha", pair.h_a.lower, pair.h_a.upper)] {
            let name = format!("or{}.{tag}", k + 1);
            let got = r.items.iter().find(|i| i.name == name).ok_or(format!("missing {name}"))?.computed;
            worst = worst.max((got - mass(lo, hi)).abs());
        }
    }
    let swaps = r.warnings.iter().filter(|w| w.contains("labels swapped")).count();
    let (pass, detail) = report_line(&r);
    Ok((
        pass && worst <= 1e-6 && swaps == 3,
        format!("{detail} oracle_max_abs_diff={worst:.2e} label_swap_flags={swaps}"),
    ))
}

fn mirrored(g: &ScenarioGrid) -> twoit::Result<ScenarioGrid> {
    let mut m = g.clone();
    m.truth_a = 1.0 - g.truth_a;
    m.truth_p = 1.0 - g.truth_p;
    m.pair = symmetric_pair(m.truth_a, m.truth_p, g.pair.h_a.length(), g.pair.pi, g.pair.rule)?;
    Ok(m)
}

fn max_rate_diff(a: &[OCPoint], b: &[OCPoint]) -> f64 {
    let mut d = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        for (r, s) in [(x.given_ha, y.given_ha), (x.given_hp, y.given_hp)] {
            for (u, v) in [
                (r.accept_hp, s.accept_hp),
                (r.accept_ha, s.accept_ha),
                (r.serendipity, s.serendipity),
                (r.insufficient, s.insufficient),
            ] {
                d = d.max((u - v).abs());
            }
        }
    }
    d
}

fn c5() -> Check {
    let e = |e: twoit::Error| e.to_string();
    let mut worst_false = (0.0f64, String::new());
    let mut false_violations = 0;
    let mut power_fails = Vec::new();
    let mut worst_mirror = 0.0f64;
    for width in ONE_PROP_WIDTHS {
        for g in one_prop_paper_scenarios(width, DecisionRule::CriInclusion).map_err(e)? {
            let pts = exact_one_prop_oc(&g).map_err(e)?;
            for p in &pts {
                let f = p.p_hp_given_ha().max(p.p_ha_given_hp());
                if f > 0.05 {
                    false_violations += 1;
                }
                if f > worst_false.0 {
                    worst_false = (f, format!("{}@N={}", g.scenario_id, p.n));
                }
            }
            let delta = g.truth_p - g.truth_a;
            if delta >= 0.2 - 1e-9 && width <= 0.2 + 1e-9 {
                let last = pts.last().expect("non-empty grid");
                let power = last.p_ha_given_ha().min(last.p_hp_given_hp());
                if !(power > 0.99) {
                    power_fails.push(format!("{}:{power:.3}", g.scenario_id));
                }
            }
            let m = exact_one_prop_oc(&mirrored(&g).map_err(e)?).map_err(e)?;
            worst_mirror = worst_mirror.max(max_rate_diff(&pts, &m));
        }
    }
    let pass = false_violations == 0 && power_fails.is_empty() && worst_mirror <= 1e-12;
    Ok((
        pass,
        format!(
            "rule=cri max_false_accept={:.4}({}) cells_over_0.05={false_violations} power_at_1000_below_0.99=[{}] mirror_max_diff={worst_mirror:.1e}",
            worst_false.0,
            worst_false.1,
            power_fails.join(" ")
        ),
    ))
}

fn c6() -> Check {
    let n_sims = 2000;
    let g = two_prop_paper_grid(vec![20, 100, 400, 800], n_sims, SEED).map_err(|e| e.to_string())?;
    let pts = mc_two_prop_oc(&g, workers()).map_err(|e| e.to_string())?;
    let slack = 0.05 + 3.0 * (0.05f64 * 0.95 / n_sims as f64).sqrt();
    let false_ok = pts.iter().all(|p| p.p_hp_given_ha() <= slack);
    let power: Vec<f64> = pts.iter().map(|p| p.p_hp_given_hp()).collect();
    let monotone = power.windows(2).all(|w| w[1] >= w[0]);
    let end = *power.last().expect("non-empty grid");
    let fa: Vec<String> = pts.iter().map(|p| format!("{:.4}", p.p_hp_given_ha())).collect();
    let pw: Vec<String> = power.iter().map(|p| format!("{p:.4}")).collect();
    Ok((
        false_ok && monotone && end > 0.9,
        format!("Pr(HP|HA)=[{}] bound={slack:.4} Pr(HP|HP)=[{}] monotone={monotone}", fa.join(","), pw.join(",")),
    ))
}

fn c7() -> Check {
    let r = tables(&[120, 400], 2000, SEED, workers(), None).map_err(|e| e.to_string())?;
    let (pass, detail) = report_line(&r);
    let mut direction_ok = true;
    for s in 1..=5 {
        let extra = tables(&[120, 400], 2000, SEED + s, workers(), None).map_err(|e| e.to_string())?;
        direction_ok &= extra
            .items
            .iter()
            .filter(|i| i.name.contains("not_above_overall") || i.name.contains("gap_shrinks"))
            .all(|i| i.pass == Some(true));
    }
    Ok((pass && direction_ok, format!("{detail} direction_on_5_more_seeds={direction_ok}")))
}

fn spot_cell(a: f64, p: f64, width: f64, rule: DecisionRule, n: u64, n_sims: usize) -> twoit::Result<ScenarioGrid> {
    Ok(ScenarioGrid {
        situation: Situation::OneProp,
        scenario_id: format!("a{a}_p{p}_w{width}"),
        truth_a: a,
        truth_p: p,
        baseline: 0.0,
        pair: symmetric_pair(a, p, width, 0.95, rule)?,
        n_grid: vec![n],
        n_sims,
        data_sd: 0.0,
        prior: GridPrior::Beta(BetaPrior::jeffreys()),
        draws: 0,
        seed: SEED,
    })
}

fn c8() -> Check {
    let n_sims = 100_000;
    let cells = [
        (0.3, 0.5, 0.2, DecisionRule::CriInclusion, 50),
        (0.1, 0.3, 0.1, DecisionRule::ProbabilityThreshold, 100),
        (0.4, 0.6, 0.2, DecisionRule::CriInclusion, 200),
        (0.5, 0.8, 0.3, DecisionRule::ProbabilityThreshold, 40),
        (0.3, 0.4, 0.1, DecisionRule::CriInclusion, 500),
    ];
    let mut worst_z = 0.0f64;
    for (a, p, w, rule, n) in cells {
        let g = spot_cell(a, p, w, rule, n, n_sims).map_err(|e| e.to_string())?;
        let exact = exact_one_prop_oc(&g).map_err(|e| e.to_string())?;
        let mc = mc_one_prop_oc(&g, workers()).map_err(|e| e.to_string())?;
        let (x, y) = (&exact[0], &mc[0]);
        for (u, v) in [
            (x.p_hp_given_ha(), y.p_hp_given_ha()),
            (x.p_ha_given_ha(), y.p_ha_given_ha()),
            (x.p_hp_given_hp(), y.p_hp_given_hp()),
            (x.p_ha_given_hp(), y.p_ha_given_hp()),
        ] {
            let var = (u * (1.0 - u)).max(1.0 / n_sims as f64) / n_sims as f64;
            worst_z = worst_z.max((u - v).abs() / var.sqrt());
        }
    }
    Ok((worst_z <= 3.0, format!("cells=5 n_sims={n_sims} max_abs_z={worst_z:.2}")))
}

fn bin(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_twoit")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

const TWO_PROP_TOML: &str = r#"
situation = "two_prop"
truth_a = 0.0
truth_p = 0.2
baseline = 0.5
ha = [-0.1, 0.1]
hp = [0.1, 0.3]
rule = "threshold"
n_grid = [20, 100, 200]
n_sims = 200
draws = 10000
seed = 11
"#;

const MEAN_TOML: &str = r#"
situation = "mean"
truth_a = 10.0
truth_p = 11.0
ha = [9.5, 10.5]
hp = [10.5, 11.5]
rule = "cri"
n_grid = [120, 400]
n_sims = 500
mu0 = 10.0
seed = 11
"#;

const ONE_PROP_TOML: &str = r#"
situation = "one_prop"
truth_a = 0.3
truth_p = 0.5
ha = [0.2, 0.4]
hp = [0.4, 0.6]
rule = "cri"
method = "mc"
n_grid = [50, 200]
n_sims = 5000
seed = 11
"#;

fn simulate_identical(dir: &Path, name: &str, toml: &str, cmd: &str) -> Result<bool, String> {
    let cfg = dir.join(format!("{name}.toml"));
    std::fs::write(&cfg, toml).map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for w in ["1", "8"] {
        let out = dir.join(format!("{name}_w{w}"));
        bin(&[cmd, "--config", cfg.to_str().unwrap(), "--out-dir", out.to_str().unwrap(), "--workers", w])?;
        let mut bytes = std::fs::read(out.join("oc.csv")).map_err(|e| e.to_string())?;
        if cmd == "simulate-bias" {
            bytes.extend(std::fs::read(out.join("bias.csv")).map_err(|e| e.to_string())?);
        }
        files.push(bytes);
    }
    Ok(files[0] == files[1])
}

fn c9() -> Check {
    let runs: [&[&str]; 4] = [
        &["test-two-prop", "--x1", "131", "--n1", "181", "--x2", "119", "--n2", "181", "--ha", "-0.1", "0.1", "--hp", "0.1", "0.3", "--prior", "uniform", "--seed", "7"],
        &["test-ratio", "--x1", "79", "--n1", "438", "--x2", "44", "--n2", "446", "--target", "1.7", "--prior", "uniform", "--seed", "7"],
        &["test-mean-diff", "--n1", "242", "--mean1", "99.08", "--sd1", "18.35", "--n2", "205", "--mean2", "98.97", "--sd2", "19.66", "--hp", "-5", "5", "--ha", "-5", "5", "--ha-outside", "--seed", "7"],
        &["test-two-prop", "--x1", "59", "--n1", "181", "--x2", "62", "--n2", "181", "--ha", "-0.1", "0.1", "--hp", "0.1", "0.3", "--seed", "7", "--format", "csv"],
    ];
    let mut same_tests = true;
    for args in runs {
        same_tests &= bin(args)? == bin(args)?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let two = simulate_identical(dir.path(), "two_prop", TWO_PROP_TOML, "simulate-oc")?;
    let one = simulate_identical(dir.path(), "one_prop", ONE_PROP_TOML, "simulate-oc")?;
    let mean = simulate_identical(dir.path(), "mean", MEAN_TOML, "simulate-bias")?;
    Ok((
        same_tests && two && one && mean,
        format!("test_commands_identical={same_tests} workers_1_vs_8: two_prop={two} one_prop={one} mean_bias={mean}"),
    ))
}

fn c10() -> Check {
    let mut rng = SeededStream::new(SEED, 0).rng();
    let cases = 10_000;
    let mut tally = [0usize; 5];
    for _ in 0..cases {
        let a_lo: f64 = rng.random_range(-5.0..5.0);
        let a_hi = a_lo + rng.random_range(0.01..3.0);
        let gap = if rng.random_bool(0.3) { 0.0 } else { rng.random_range(0.0..2.0) };
        let (p_lo, p_hi) = if rng.random_bool(0.5) {
            let lo = a_hi + gap;
            (lo, lo + rng.random_range(0.01..3.0))
        } else {
            let hi = a_lo - gap;
            (hi - rng.random_range(0.01..3.0), hi)
        };
        let rule = if rng.random_bool(0.5) { DecisionRule::ProbabilityThreshold } else { DecisionRule::CriInclusion };
        let pi = rng.random_range(0.5..1.0f64).max(0.500_001);
        let mk = |l, lo, hi| IntervalHypothesis::new(l, lo, hi, Scale::Natural);
        let pair = make_pair(
            mk(HypothesisLabel::Present, p_lo, p_hi).map_err(|e| e.to_string())?,
            mk(HypothesisLabel::Absent, a_lo, a_hi).map_err(|e| e.to_string())?,
            pi,
            rule,
            0.95,
        )
        .map_err(|e| e.to_string())?;
        let m_hp: f64 = rng.random_range(0.0..1.0);
        let m_ha: f64 = rng.random_range(0.0..=(1.0 - m_hp));
        let lower: f64 = rng.random_range(-8.0..8.0);
        let upper = lower + rng.random_range(0.001..6.0);
        let summary = PosteriorSummary {
            point: 0.5 * (lower + upper),
            cri: CredibleInterval { lower, upper, level: 0.95 },
            mass_hp: m_hp,
            mass_ha: m_ha,
            scale: Scale::Natural,
            method: Method::Exact,
            warnings: Vec::new(),
        };
        let v = evaluate(&summary, &pair).map_err(|e| format!("{e} for {pair:?}"))?;
        let idx = Outcome::ALL.iter().position(|o| *o == v.outcome).expect("known outcome");
        tally[idx] += 1;
        let (hp_ok, ha_ok) = match rule {
            DecisionRule::ProbabilityThreshold => (m_hp >= pi, m_ha >= pi),
            DecisionRule::CriInclusion => (
                lower >= p_lo && upper <= p_hi,
                lower >= a_lo && upper <= a_hi,
            ),
        };
        let consistent = match v.outcome {
            Outcome::AcceptHp => hp_ok && !ha_ok,
            Outcome::AcceptHa => ha_ok && !hp_ok,
            Outcome::Serendipity | Outcome::InsufficientPower => !hp_ok && !ha_ok,
            Outcome::AmbiguousOverlap => false,
        };
        if !consistent {
            return Ok((false, format!("outcome {:?} inconsistent for {summary:?} {pair:?}", v.outcome)));
        }
    }
    let counts: Vec<String> = Outcome::ALL.iter().zip(tally).map(|(o, c)| format!("{}={c}", o.as_str())).collect();
    Ok((tally.iter().sum::<usize>() == cases, format!("cases={cases} {}", counts.join(" "))))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Check, Duration); 10] = [
        (1, "example 1 relative risk", c1, Duration::from_secs(5)),
        (2, "example 2 mean-difference equivalence", c2, Duration::from_secs(5)),
        (3, "example 3 baseline balance", c3, Duration::from_secs(5)),
        (4, "odds-ratio consistency", c4, Duration::MAX),
        (5, "one-proportion exact operating characteristics", c5, Duration::from_secs(120)),
        (6, "two-proportion operating characteristics", c6, Duration::from_secs(600)),
        (7, "selection-bias tables", c7, Duration::from_secs(300)),
        (8, "exact vs simulated one-proportion OC", c8, Duration::MAX),
        (9, "determinism", c9, Duration::MAX),
        (10, "decision-logic exhaustiveness", c10, Duration::MAX),
    ];
    println!("acceptance seed={SEED} draws={DRAWS} workers={}", workers());
    let mut failed = 0;
    for (id, name, f, budget) in criteria {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let (pass, detail) = match result {
            Ok((pass, detail)) => (pass && took <= budget, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let budget_note = if budget == Duration::MAX { String::new() } else { format!(" budget={}s", budget.as_secs()) };
        println!(
            "criterion {id:>2} {} [{:.1}s{budget_note}] {name}: {detail}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
        if !pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
