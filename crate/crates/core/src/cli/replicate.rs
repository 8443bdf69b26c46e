//! `replicate`: recompute the worked examples and reference tables and
//! compare them with the published values.

use std::fs;
use std::path::Path;

use serde::Serialize;

use super::args::{ReplicateArgs, Which};
use super::report::write_text;
use crate::decision::{evaluate, posterior_ratio};
use crate::error::Result;
use crate::hypothesis::{
    make_pair, ratio_pair_from_target, DecisionRule, HypothesisLabel, HypothesisPair, IntervalHypothesis, Scale,
};
use crate::numerics::{empirical_quantile, normal_cdf, normal_quantile, SeededStream};
use crate::posterior::{
    default_prior_sd_log, mean_diff_two_groups, summary_log_posterior, two_prop_diff_posterior,
    two_prop_ratio_posterior, BetaPrior, McOptions, NormalPrior, RatioMeasure, SampleStats, TwoPropData,
};
use crate::simulation::{
    bias_quantiles, bias_table_grid, bimodality_coefficient, exact_one_prop_oc, mc_mean_oc, mc_two_prop_oc,
    one_prop_paper_scenarios, paper_mean_grid, two_prop_paper_grid, with_workers, write_bias_csv, write_oc_csv,
    BiasRecord, OcTable, Truth, ONE_PROP_WIDTHS,
};

/// One compared quantity. `pass` is absent for purely informative items.
#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub name: String,
    pub computed: f64,
    pub expected: Option<f64>,
    pub band: Option<[f64; 2]>,
    pub pass: Option<bool>,
}

impl Item {
    pub fn within(name: impl Into<String>, computed: f64, expected: f64, tol: f64) -> Self {
        Self::band_around(name, computed, Some(expected), [expected - tol, expected + tol])
    }

    pub fn in_band(name: impl Into<String>, computed: f64, lo: f64, hi: f64) -> Self {
        Self::band_around(name, computed, None, [lo, hi])
    }

    fn band_around(name: impl Into<String>, computed: f64, expected: Option<f64>, band: [f64; 2]) -> Self {
        let pass = computed >= band[0] && computed <= band[1];
        Self { name: name.into(), computed, expected, band: Some(band), pass: Some(pass) }
    }

    pub fn info(name: impl Into<String>, computed: f64) -> Self {
        Self { name: name.into(), computed, expected: None, band: None, pass: None }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), computed: ok as u8 as f64, expected: Some(1.0), band: None, pass: Some(ok) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplicationReport {
    pub which: &'static str,
    pub seed: u64,
    pub draws: Option<usize>,
    pub pass: bool,
    pub items: Vec<Item>,
    pub warnings: Vec<String>,
}

impl ReplicationReport {
    fn new(which: &'static str, seed: u64, draws: Option<usize>, items: Vec<Item>, warnings: Vec<String>) -> Self {
        let pass = items.iter().all(|i| i.pass != Some(false));
        Self { which, seed, draws, pass, items, warnings }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| i.pass == Some(false))
    }
}

fn natural(label: HypothesisLabel, lo: f64, hi: f64) -> Result<IntervalHypothesis> {
    IntervalHypothesis::new(label, lo, hi, Scale::Natural)
}

fn natural_outside(label: HypothesisLabel, lo: f64, hi: f64) -> Result<IntervalHypothesis> {
    IntervalHypothesis::outside(label, lo, hi, Scale::Natural)
}

/// Relative risk of abstinence, 79/438 against 44/446, target ratio 1.7.
pub fn example1(seed: u64, draws: usize) -> Result<ReplicationReport> {
    let pair = ratio_pair_from_target(1.7, 0.95, DecisionRule::ProbabilityThreshold)?;
    let data = TwoPropData::new(79, 438, 44, 446)?;
    let s = two_prop_ratio_posterior(
        &data,
        RatioMeasure::RiskRatio,
        BetaPrior::uniform(),
        &pair,
        &McOptions::new(draws, SeededStream::new(seed, 0)),
    )?;
    let v = evaluate(&s, &pair)?;
    let ratio = posterior_ratio(&s).value().unwrap_or(f64::NAN);
    let items = vec![
        Item::within("h_p.lower", pair.h_p.lower, 1.30, 0.005),
        Item::within("h_p.upper", pair.h_p.upper, 2.22, 0.005),
        Item::within("h_a.lower", pair.h_a.lower, 0.77, 0.005),
        Item::within("mass_hp", s.mass_hp, 0.849, 0.010),
        Item::within("mass_ha", s.mass_ha, 0.028, 0.005),
        Item::within("posterior_ratio", ratio, 30.3, 1.5),
        Item::info("point", s.point),
        Item::info("cri.lower", s.cri.lower),
        Item::info("cri.upper", s.cri.upper),
    ];
    let warnings = vec![format!("verdict: {}", v.outcome.as_str())];
    Ok(ReplicationReport::new("example1", seed, Some(draws), items, warnings))
}

/// Group sizes of the equivalence example; not published, chosen so the
/// posterior interval of the difference has the published width.
pub const EXAMPLE2_GROUP_SIZES: (u64, u64) = (242, 205);

/// Full-scale IQ equivalence within ±5 points.
pub fn example2(seed: u64, draws: usize) -> Result<ReplicationReport> {
    let pair = make_pair(
        natural(HypothesisLabel::Present, -5.0, 5.0)?,
        natural_outside(HypothesisLabel::Absent, -5.0, 5.0)?,
        0.95,
        DecisionRule::ProbabilityThreshold,
        0.95,
    )?;
    let (n1, n2) = EXAMPLE2_GROUP_SIZES;
    let s1 = SampleStats::new(n1, 99.08, 18.35 * 18.35)?;
    let s2 = SampleStats::new(n2, 98.97, 19.66 * 19.66)?;
    let prior = NormalPrior::low_informative();
    let s = mean_diff_two_groups(&s1, &s2, &prior, &prior, &pair, &McOptions::new(draws, SeededStream::new(seed, 0)))?;
    let v = evaluate(&s, &pair)?;
    let ratio = posterior_ratio(&s).value().unwrap_or(f64::NAN);
    let items = vec![
        Item::within("point", s.point, 0.10, 0.15),
        Item::within("cri.lower", s.cri.lower, -3.39, 0.3),
        Item::within("cri.upper", s.cri.upper, 3.64, 0.3),
        Item::within("mass_hp", s.mass_hp, 0.995, 0.003),
        Item::in_band("posterior_ratio", ratio, 100.0, 400.0),
        Item::flag("accepts_hp", v.outcome.accepts_hp()),
    ];
    let warnings = vec![
        format!("group sizes derived, not published: n = ({n1}, {n2})"),
        format!("verdict: {}", v.outcome.as_str()),
    ];
    Ok(ReplicationReport::new("example2", seed, Some(draws), items, warnings))
}

/// Baseline balance of two randomised groups: no imbalance is `|δ| < 0.1`.
pub fn example3(seed: u64, draws: usize) -> Result<ReplicationReport> {
    let pair = make_pair(
        natural_outside(HypothesisLabel::Present, -0.1, 0.1)?,
        natural(HypothesisLabel::Absent, -0.1, 0.1)?,
        0.95,
        DecisionRule::ProbabilityThreshold,
        0.95,
    )?;
    let mut items = Vec::new();
    let mut warnings = Vec::new();
    for (label, data, expected) in [
        ("metastases", TwoPropData::new(131, 181, 119, 181)?, 0.764),
        ("ecog0", TwoPropData::new(59, 181, 62, 181)?, 0.947),
    ] {
        let mc = McOptions::new(draws, SeededStream::new(seed, 0));
        let s = two_prop_diff_posterior(&data, BetaPrior::uniform(), &pair, &mc)?;
        let v = evaluate(&s, &pair)?;
        items.push(Item::within(format!("{label}.mass_ha"), s.mass_ha, expected, 0.010));
        items.push(Item::info(format!("{label}.mass_hp"), s.mass_hp));
        warnings.push(format!("{label} verdict: {}", v.outcome.as_str()));
    }
    Ok(ReplicationReport::new("example3", seed, Some(draws), items, warnings))
}

/// Published estimates, posterior summaries and masses of the three-study
/// odds-ratio illustration: `(OR, CI, posterior OR, posterior CrI, printed Pr(H_P), printed Pr(H_A))`.
pub const OR_STUDIES: [(f64, (f64, f64), f64, (f64, f64), f64, f64); 3] = [
    (2.66, (1.19, 5.97), 2.75, (1.16, 5.62), 0.018, 0.631),
    (1.76, (1.00, 3.08), 1.80, (1.00, 3.01), 0.053, 0.918),
    (1.62, (0.96, 2.83), 1.66, (0.92, 2.78), 0.090, 0.895),
];

pub fn or_pair() -> Result<HypothesisPair> {
    make_pair(
        IntervalHypothesis::new(HypothesisLabel::Present, 1.1, 2.95, Scale::Log)?,
        IntervalHypothesis::new(HypothesisLabel::Absent, 0.9, 1.1, Scale::Log)?,
        0.95,
        DecisionRule::ProbabilityThreshold,
        0.95,
    )
}

/// Normal-CDF masses computed directly from the conjugate normal update.
fn or_oracle(estimate: f64, ci: (f64, f64), sd_prior: f64, lo: f64, hi: f64) -> f64 {
    let se = (ci.1.ln() - ci.0.ln()) / (2.0 * normal_quantile(0.975));
    let w_data = se.powi(-2);
    let w_prior = sd_prior.powi(-2);
    let m = w_data * estimate.ln() / (w_data + w_prior);
    let s = (w_data + w_prior).powf(-0.5);
    normal_cdf((hi.ln() - m) / s) - normal_cdf((lo.ln() - m) / s)
}

pub fn or_consistency() -> Result<ReplicationReport> {
    let pair = or_pair()?;
    let sd = default_prior_sd_log();
    let mut items = Vec::new();
    let mut warnings = Vec::new();
    for (k, &(or, ci, post_or, post_ci, printed_hp, printed_ha)) in OR_STUDIES.iter().enumerate() {
        let tag = format!("or{}", k + 1);
        let s = summary_log_posterior(or, ci, 0.95, sd, &pair)?;
        let oracle_hp = or_oracle(or, ci, sd, pair.h_p.lower, pair.h_p.upper);
        let oracle_ha = or_oracle(or, ci, sd, pair.h_a.lower, pair.h_a.upper);
        items.push(Item::within(format!("{tag}.point"), s.point, post_or, 0.15));
        items.push(Item::within(format!("{tag}.cri.lower"), s.cri.lower, post_ci.0, 0.25));
        items.push(Item::within(format!("{tag}.cri.upper"), s.cri.upper, post_ci.1, 0.25));
        items.push(Item::within(format!("{tag}.mass_hp"), s.mass_hp, oracle_hp, 1e-6));
        items.push(Item::within(format!("{tag}.mass_ha"), s.mass_ha, oracle_ha, 1e-6));
        let straight = (s.mass_hp - printed_hp).abs() + (s.mass_ha - printed_ha).abs();
        let swapped = (s.mass_hp - printed_ha).abs() + (s.mass_ha - printed_hp).abs();
        if swapped < straight {
            warnings.push(format!(
                "{tag}: printed Pr(H_P) = {printed_hp}, Pr(H_A) = {printed_ha} sit closer to the computed masses with \
                 the labels swapped (computed Pr(H_P) = {:.3}, Pr(H_A) = {:.3})",
                s.mass_hp, s.mass_ha
            ));
        }
    }
    warnings.push(format!("prior sd on the log odds ratio: ln(20)/1.96 = {sd:.4}"));
    Ok(ReplicationReport::new("or-consistency", 0, None, items, warnings))
}

fn median_sd(records: &[BiasRecord], n: u64, truth: Truth, accepted: Option<bool>) -> f64 {
    let mut v: Vec<f64> = records
        .iter()
        .filter(|r| r.n == n && r.truth == truth && accepted.is_none_or(|a| r.accepted == a))
        .map(|r| r.sample_sd)
        .collect();
    if v.is_empty() {
        f64::NAN
    } else {
        empirical_quantile(&mut v, 0.5)
    }
}

/// Selection-bias tables for the mean, means 10 and 11, sd 3, unit-width hypotheses.
pub fn tables(n_list: &[u64], n_sims: usize, seed: u64, workers: usize, out_dir: Option<&Path>) -> Result<ReplicationReport> {
    let n_grid = if n_list.is_empty() { vec![120, 150, 200, 400] } else { n_list.to_vec() };
    let grid = bias_table_grid(n_grid.clone(), n_sims, seed)?;
    let (points, records) = mc_mean_oc(&grid, workers)?;
    let (rows, mut warnings) = bias_quantiles(&records, [0.025, 0.5, 0.975]);
    let mut items = Vec::new();
    let row = |n: u64, truth: Truth, accepted: bool| rows.iter().find(|r| r.n == n && r.truth == truth && r.accepted == accepted);
    for &n in &n_grid {
        for truth in Truth::BOTH {
            let t = truth.as_str();
            let count = row(n, truth, true).map_or(0, |r| r.count) as f64;
            let acc = median_sd(&records, n, truth, Some(true));
            let all = median_sd(&records, n, truth, None);
            match (n, truth, n_sims) {
                (400, Truth::Ha, 2000) => {
                    items.push(Item::in_band(format!("n{n}.{t}.accepted_count"), count, 1618.0, 1738.0));
                    items.push(Item::within(format!("n{n}.{t}.sd_q50"), acc, 2.99, 0.05));
                    if let Some(r) = row(n, truth, true) {
                        for (q, e) in r.mean_q.iter().zip([9.81, 10.00, 10.19]) {
                            items.push(Item::within(format!("n{n}.{t}.mean_q[{e}]"), *q, e, 0.04));
                        }
                    }
                }
                (120, Truth::Ha, 2000) => {
                    items.push(Item::in_band(format!("n{n}.{t}.accepted_count"), count, 5.0, 35.0));
                    items.push(Item::within(format!("n{n}.{t}.sd_q50"), acc, 2.66, 0.10));
                }
                _ => {
                    items.push(Item::info(format!("n{n}.{t}.accepted_count"), count));
                    items.push(Item::info(format!("n{n}.{t}.sd_q50"), acc));
                }
            }
            if !acc.is_nan() {
                items.push(Item::flag(format!("n{n}.{t}.accepted_sd_not_above_overall"), acc <= all));
            }
        }
    }
    if n_grid.contains(&120) && n_grid.contains(&400) {
        for truth in Truth::BOTH {
            let gap = |n| median_sd(&records, n, truth, None) - median_sd(&records, n, truth, Some(true));
            items.push(Item::flag(format!("{}.sd_gap_shrinks_120_to_400", truth.as_str()), gap(400) < gap(120)));
        }
    }
    warnings.push("observations simulated with sd 3 (variance 9)".into());
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
        write_bias_csv(fs::File::create(dir.join("bias.csv"))?, &rows)?;
        write_oc_csv(fs::File::create(dir.join("oc.csv"))?, &[OcTable::new(&grid, points)])?;
    }
    Ok(ReplicationReport::new("tables", seed, None, items, warnings))
}

/// Data behind the operating-characteristic figures and the bias figures.
pub fn figures(n_sims: usize, seed: u64, workers: usize, out_dir: Option<&Path>) -> Result<ReplicationReport> {
    let mut tables = Vec::new();
    for rule in [DecisionRule::CriInclusion, DecisionRule::ProbabilityThreshold] {
        for width in ONE_PROP_WIDTHS {
            for grid in one_prop_paper_scenarios(width, rule)? {
                let pts = with_workers(workers, || exact_one_prop_oc(&grid))??;
                tables.push(OcTable::new(&grid, pts));
            }
        }
    }
    let two = two_prop_paper_grid(vec![20, 50, 100, 200, 400, 600, 800], n_sims, seed)?;
    tables.push(OcTable::new(&two, mc_two_prop_oc(&two, workers)?));
    let mean = paper_mean_grid((3..=100).map(|k| 10 * k).collect(), n_sims, seed)?;
    tables.push(OcTable::new(&mean, mc_mean_oc(&mean, workers)?.0));

    let bias_grid = bias_table_grid(vec![250, 750], n_sims, seed)?;
    let (_, records) = mc_mean_oc(&bias_grid, workers)?;
    let (rows, warnings) = bias_quantiles(&records, [0.025, 0.5, 0.975]);
    let mut items = Vec::new();
    for n in [250, 750] {
        for truth in Truth::BOTH {
            let rejected: Vec<f64> = records
                .iter()
                .filter(|r| r.n == n && r.truth == truth && !r.accepted)
                .map(|r| r.sample_mean)
                .collect();
            let bc = bimodality_coefficient(&rejected);
            items.push(Item::in_band(format!("n{n}.{}.rejected_means_bimodality", truth.as_str()), bc, 5.0 / 9.0, 1.0));
        }
    }
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
        write_oc_csv(fs::File::create(dir.join("oc.csv"))?, &tables)?;
        write_bias_csv(fs::File::create(dir.join("bias.csv"))?, &rows)?;
    }
    Ok(ReplicationReport::new("figures", seed, Some(two.draws), items, warnings))
}

pub fn replicate(a: ReplicateArgs) -> Result<i32> {
    let dir = a.out_dir.as_deref();
    let report = match a.which {
        Which::Example1 => example1(a.seed, a.draws)?,
        Which::Example2 => example2(a.seed, a.draws)?,
        Which::Example3 => example3(a.seed, a.draws)?,
        Which::OrConsistency => or_consistency()?,
        Which::Tables => tables(&a.n, a.n_sims, a.seed, a.workers, dir)?,
        Which::Figures => figures(a.n_sims, a.seed, a.workers, dir)?,
    };
    let text = format!("{}\n", serde_json::to_string_pretty(&report)?);
    write_text(None, &text)?;
    if let Some(d) = dir {
        fs::create_dir_all(d)?;
        fs::write(d.join(format!("{}.json", report.which)), &text)?;
    }
    for f in report.failures() {
        eprintln!(
            "{}",
            serde_json::json!({ "fail": f.name, "computed": f.computed, "expected": f.expected, "band": f.band })
        );
    }
    Ok(if report.pass { 0 } else { 1 })
}
