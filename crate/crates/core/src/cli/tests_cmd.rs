use serde_json::json;

use super::args::{
    parse_beta_prior, MeasureArg, TestMeanArgs, TestMeanDiffArgs, TestPropArgs, TestRatioArgs,
    TestSummaryRatioArgs, TestTwoPropArgs,
};
use super::report::TestReport;
use crate::decision::{evaluate, prior_interval_mass, PriorSpec};
use crate::error::{validation, Result};
use crate::hypothesis::{ratio_pair_from_target, Scale};
use crate::numerics::SeededStream;
use crate::posterior::{
    default_prior_sd_log, mean_diff_two_groups, mean_posterior, mean_summary, one_prop_posterior, one_prop_summary,
    summary_log_posterior, two_prop_diff_posterior, two_prop_ratio_posterior, McOptions, RatioMeasure, SampleStats,
    TwoPropData,
};

/// Prior masses by Monte Carlo use the stream after the posterior's.
const PRIOR_STREAM: u64 = 1;

fn mc_options(seed: u64, draws: usize) -> McOptions {
    McOptions::new(draws, SeededStream::new(seed, 0))
}

fn stats(n: u64, mean: f64, sd: f64) -> Result<SampleStats> {
    if !(sd >= 0.0) {
        return Err(validation(format!("sd must be non-negative, got {sd}")));
    }
    SampleStats::new(n, mean, sd * sd)
}

pub fn test_prop(a: TestPropArgs) -> Result<i32> {
    let pair = a.pair.build(Scale::Natural)?;
    let prior = parse_beta_prior(&a.prior)?;
    let post = one_prop_posterior(a.x, a.n, prior)?;
    let summary = one_prop_summary(&post, &pair)?;
    let verdict = evaluate(&summary, &pair)?;
    let masses = prior_interval_mass(&PriorSpec::OneProp(prior), &pair, 0, SeededStream::new(0, PRIOR_STREAM));
    TestReport::new(
        "test-prop",
        json!({ "x": a.x, "n": a.n }),
        pair,
        json!({ "beta": [prior.a, prior.b], "posterior": [post.a, post.b] }),
        summary,
        verdict,
    )
    .with_prior_masses(masses)
    .emit(&a.out)?;
    Ok(0)
}

pub fn test_two_prop(a: TestTwoPropArgs) -> Result<i32> {
    let pair = a.pair.build(Scale::Natural)?;
    let prior = parse_beta_prior(&a.prior)?;
    let data = TwoPropData::new(a.x1, a.n1, a.x2, a.n2)?;
    let mc = mc_options(a.mc.seed, a.mc.draws);
    let summary = two_prop_diff_posterior(&data, prior, &pair, &mc)?;
    let verdict = evaluate(&summary, &pair)?;
    let masses = prior_interval_mass(
        &PriorSpec::TwoPropDiff(prior),
        &pair,
        a.mc.draws,
        SeededStream::new(a.mc.seed, PRIOR_STREAM),
    );
    TestReport::new(
        "test-two-prop",
        json!({ "x1": a.x1, "n1": a.n1, "x2": a.x2, "n2": a.n2 }),
        pair,
        json!({ "beta": [prior.a, prior.b] }),
        summary,
        verdict,
    )
    .with_prior_masses(masses)
    .emit(&a.out)?;
    Ok(0)
}

pub fn test_mean(a: TestMeanArgs) -> Result<i32> {
    let pair = a.pair.build(Scale::Natural)?;
    let prior = a.prior.build()?;
    let post = mean_posterior(&stats(a.n, a.mean, a.sd)?, &prior)?;
    let summary = mean_summary(&post, &pair)?;
    let verdict = evaluate(&summary, &pair)?;
    let masses = prior_interval_mass(&PriorSpec::Mean(prior), &pair, 0, SeededStream::new(0, PRIOR_STREAM));
    TestReport::new(
        "test-mean",
        json!({ "n": a.n, "mean": a.mean, "sd": a.sd }),
        pair,
        json!({ "normal": prior, "posterior": post }),
        summary,
        verdict,
    )
    .with_prior_masses(masses)
    .emit(&a.out)?;
    Ok(0)
}

pub fn test_mean_diff(a: TestMeanDiffArgs) -> Result<i32> {
    let pair = a.pair.build(Scale::Natural)?;
    let prior = a.prior.build()?;
    let (s1, s2) = (stats(a.n1, a.mean1, a.sd1)?, stats(a.n2, a.mean2, a.sd2)?);
    let mc = mc_options(a.mc.seed, a.mc.draws);
    let summary = mean_diff_two_groups(&s1, &s2, &prior, &prior, &pair, &mc)?;
    let verdict = evaluate(&summary, &pair)?;
    let masses = prior_interval_mass(
        &PriorSpec::MeanDiff(prior, prior),
        &pair,
        a.mc.draws,
        SeededStream::new(a.mc.seed, PRIOR_STREAM),
    );
    TestReport::new(
        "test-mean-diff",
        json!({ "group1": s1, "group2": s2 }),
        pair,
        json!({ "normal": prior }),
        summary,
        verdict,
    )
    .with_prior_masses(masses)
    .emit(&a.out)?;
    Ok(0)
}

pub fn test_ratio(a: TestRatioArgs) -> Result<i32> {
    let pair = match a.target {
        Some(t) => ratio_pair_from_target(t, a.pair.pi, a.pair.rule.into())?,
        None => a.pair.build(Scale::Log)?,
    };
    let prior = parse_beta_prior(&a.prior)?;
    let measure = match a.measure {
        MeasureArg::Rr => RatioMeasure::RiskRatio,
        MeasureArg::Or => RatioMeasure::OddsRatio,
    };
    let data = TwoPropData::new(a.x1, a.n1, a.x2, a.n2)?;
    let mc = mc_options(a.mc.seed, a.mc.draws);
    let summary = two_prop_ratio_posterior(&data, measure, prior, &pair, &mc)?;
    let verdict = evaluate(&summary, &pair)?;
    let masses = prior_interval_mass(
        &PriorSpec::TwoPropRatio { prior, measure },
        &pair,
        a.mc.draws,
        SeededStream::new(a.mc.seed, PRIOR_STREAM),
    );
    TestReport::new(
        "test-ratio",
        json!({ "x1": a.x1, "n1": a.n1, "x2": a.x2, "n2": a.n2, "measure": measure, "target": a.target }),
        pair,
        json!({ "beta": [prior.a, prior.b] }),
        summary,
        verdict,
    )
    .with_prior_masses(masses)
    .emit(&a.out)?;
    Ok(0)
}

pub fn test_summary_ratio(a: TestSummaryRatioArgs) -> Result<i32> {
    let pair = a.pair.build(Scale::Log)?;
    let sd = a.prior_sd_log.unwrap_or_else(default_prior_sd_log);
    let (l, u) = (a.ci[0], a.ci[1]);
    let summary = summary_log_posterior(a.estimate, (l, u), a.ci_level, sd, &pair)?;
    let verdict = evaluate(&summary, &pair)?;
    let masses = prior_interval_mass(&PriorSpec::LogNormal { sd }, &pair, 0, SeededStream::new(0, PRIOR_STREAM));
    TestReport::new(
        "test-summary-ratio",
        json!({ "estimate": a.estimate, "ci": [l, u], "ci_level": a.ci_level }),
        pair,
        json!({ "log_normal_sd": sd }),
        summary,
        verdict,
    )
    .with_prior_masses(masses)
    .emit(&a.out)?;
    Ok(0)
}
