use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::args::{Format, OutputArgs};
use crate::decision::{Ratio, Verdict};
use crate::error::Result;
use crate::hypothesis::HypothesisPair;
use crate::posterior::{Method, PosteriorSummary};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PriorMasses {
    pub hp: f64,
    pub ha: f64,
}

/// Result of a `test-*` command. Field order is part of the output format.
#[derive(Debug, Serialize)]
pub struct TestReport {
    pub command: &'static str,
    pub inputs: Value,
    pub hypotheses: HypothesisPair,
    pub prior: Value,
    pub posterior: PosteriorSummary,
    pub verdict: Verdict,
    pub prior_masses: Option<PriorMasses>,
    pub seed: Option<u64>,
    pub draws: Option<usize>,
    pub warnings: Vec<String>,
}

impl TestReport {
    pub fn new(command: &'static str, inputs: Value, pair: HypothesisPair, prior: Value, posterior: PosteriorSummary, verdict: Verdict) -> Self {
        let (seed, draws) = match posterior.method {
            Method::Exact => (None, None),
            Method::MonteCarlo { draws, seed, .. } => (Some(seed), Some(draws)),
        };
        let warnings = posterior.warnings.clone();
        Self { command, inputs, hypotheses: pair, prior, posterior, verdict, prior_masses: None, seed, draws, warnings }
    }

    /// Attach prior masses and the Bayes factor, or a warning when they are undefined.
    pub fn with_prior_masses(mut self, masses: Result<(f64, f64)>) -> Self {
        match masses.and_then(|(hp, ha)| Ok((hp, ha, self.verdict.clone().with_bayes_factor(hp, ha)?))) {
            Ok((hp, ha, v)) => {
                self.prior_masses = Some(PriorMasses { hp, ha });
                self.verdict = v;
            }
            Err(e) => self.warnings.push(format!("bayes factor not reported: {e}")),
        }
        self
    }

    fn csv(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Row<'a> {
            command: &'a str,
            point: f64,
            cri_lower: f64,
            cri_upper: f64,
            cri_level: f64,
            mass_hp: f64,
            mass_ha: f64,
            outcome: &'a str,
            posterior_ratio: String,
            bayes_factor: String,
            cri_length: f64,
            trend: bool,
            seed: String,
            draws: String,
        }
        let ratio = |r: Option<Ratio>| match r.and_then(|r| r.value()) {
            Some(v) if v.is_infinite() => "inf".to_string(),
            Some(v) => v.to_string(),
            None => String::new(),
        };
        let opt = |o: Option<u64>| o.map(|v| v.to_string()).unwrap_or_default();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(Row {
            command: self.command,
            point: self.posterior.point,
            cri_lower: self.posterior.cri.lower,
            cri_upper: self.posterior.cri.upper,
            cri_level: self.posterior.cri.level,
            mass_hp: self.verdict.mass_hp,
            mass_ha: self.verdict.mass_ha,
            outcome: self.verdict.outcome.as_str(),
            posterior_ratio: ratio(Some(self.verdict.posterior_ratio)),
            bayes_factor: ratio(self.verdict.bayes_factor),
            cri_length: self.verdict.cri_length,
            trend: self.verdict.trend,
            seed: opt(self.seed),
            draws: opt(self.draws.map(|d| d as u64)),
        })?;
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8"))
    }

    pub fn emit(&self, out: &OutputArgs) -> Result<()> {
        let text = match out.format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(self)?),
            Format::Csv => self.csv()?,
        };
        write_text(out.output.as_deref(), &text)
    }
}

/// Write to `path`, or stdout when there is none.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
