use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::{BiasRecord, Truth};
use crate::error::Result;
use crate::numerics::empirical_quantile;

/// Quantiles of the sample mean and sample sd within one
/// `(n, truth, accepted)` group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiasRow {
    pub n: u64,
    pub truth: Truth,
    pub accepted: bool,
    pub count: usize,
    pub mean_q: [f64; 3],
    pub sd_q: [f64; 3],
}

/// Group the records and take the `probs` quantiles of each group.
///
/// Rows are ordered by `n`, truth, then accepted before rejected. A group
/// with no records produces a warning instead of a row.
pub fn bias_quantiles(records: &[BiasRecord], probs: [f64; 3]) -> (Vec<BiasRow>, Vec<String>) {
    let mut groups: BTreeMap<(u64, Truth, bool), (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    let mut cells: BTreeMap<(u64, Truth), ()> = BTreeMap::new();
    for r in records {
        let g = groups.entry((r.n, r.truth, r.accepted)).or_default();
        g.0.push(r.sample_mean);
        g.1.push(r.sample_sd);
        cells.insert((r.n, r.truth), ());
    }
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for (n, truth) in cells.into_keys() {
        for accepted in [true, false] {
            let Some((means, sds)) = groups.get_mut(&(n, truth, accepted)) else {
                warnings.push(format!(
                    "n={n} truth={} accepted={}: no replications, row omitted",
                    truth.as_str(),
                    yes_no(accepted)
                ));
                continue;
            };
            let q = |v: &mut Vec<f64>| probs.map(|p| empirical_quantile(v, p));
            rows.push(BiasRow { n, truth, accepted, count: means.len(), mean_q: q(means), sd_q: q(sds) });
        }
    }
    (rows, warnings)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: u64,
    truth: &'a str,
    accepted: &'a str,
    count: usize,
    mean_q025: f64,
    mean_q50: f64,
    mean_q975: f64,
    sd_q025: f64,
    sd_q50: f64,
    sd_q975: f64,
}

/// Write `bias.csv`.
pub fn write_bias_csv<W: Write>(out: W, rows: &[BiasRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(CsvRow {
            n: r.n,
            truth: r.truth.as_str(),
            accepted: yes_no(r.accepted),
            count: r.count,
            mean_q025: r.mean_q[0],
            mean_q50: r.mean_q[1],
            mean_q975: r.mean_q[2],
            sd_q025: r.sd_q[0],
            sd_q50: r.sd_q[1],
            sd_q975: r.sd_q[2],
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Sarle's bimodality coefficient `(g² + 1) / (k + 3(n-1)²/((n-2)(n-3)))`
/// with sample skewness `g` and excess kurtosis `k`. Values above `5/9`
/// (that of a uniform distribution) suggest bimodality. `NaN` for fewer than
/// four values or zero spread.
pub fn bimodality_coefficient(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 4 {
        return f64::NAN;
    }
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in values {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    let (m2, m3, m4) = (m2 / nf, m3 / nf, m4 / nf);
    if m2 == 0.0 {
        return f64::NAN;
    }
    let g1 = m3 / m2.powf(1.5);
    let g2 = m4 / (m2 * m2) - 3.0;
    // small-sample corrected skewness and excess kurtosis
    let skew = g1 * (nf * (nf - 1.0)).sqrt() / (nf - 2.0);
    let kurt = (nf - 1.0) / ((nf - 2.0) * (nf - 3.0)) * ((nf + 1.0) * g2 + 6.0);
    (skew * skew + 1.0) / (kurt + 3.0 * (nf - 1.0).powi(2) / ((nf - 2.0) * (nf - 3.0)))
}
