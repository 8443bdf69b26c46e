//! Normal mean with unknown variance under the conjugate
//! normal / scaled-inverse-χ² prior.
//!
//! With prior `(μ0, κ0, ν0, σ0²)` and data `(n, ȳ, s²)`:
//!
//! ```text
//! κn  = κ0 + n
//! νn  = ν0 + n
//! μn  = (κ0 μ0 + n ȳ) / κn
//! σn² = [ν0 σ0² + (n-1) s² + (κ0 n / κn) (ȳ - μ0)²] / νn
//! ```
//!
//! and the marginal posterior of the mean is Student-t with `νn` degrees of
//! freedom, location `μn` and scale `sqrt(σn² / κn)`.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{require_scale, summarize_draws, CredibleInterval, McOptions, Method, PosteriorSummary};
use crate::error::{invalid, Error, Result};
use crate::hypothesis::{HypothesisPair, IntervalHypothesis, Region, Scale};
use crate::numerics::{student_t_cdf, student_t_quantile, ScaledInvChi2};

/// Sufficient statistics of a sample; `s2` uses the `n - 1` divisor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub n: u64,
    pub ybar: f64,
    pub s2: f64,
}

impl SampleStats {
    pub fn new(n: u64, ybar: f64, s2: f64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("sample size must be at least 1"));
        }
        if !ybar.is_finite() || !s2.is_finite() || s2 < 0.0 {
            return Err(invalid(format!("need a finite mean and non-negative variance, got ȳ={ybar}, s²={s2}")));
        }
        if n < 2 && s2 != 0.0 {
            return Err(invalid("a sample variance needs at least two observations"));
        }
        Ok(Self { n, ybar, s2 })
    }

    /// No observations at all.
    pub fn empty() -> Self {
        Self { n: 0, ybar: 0.0, s2: 0.0 }
    }

    pub fn from_data(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("no observations"));
        }
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let s2 = if n > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Self::new(n as u64, mean, s2)
    }

    pub fn sd(&self) -> f64 {
        self.s2.sqrt()
    }
}

/// Conjugate prior: mean `mu0` worth `kappa0` observations, variance
/// `sigma0_sq` worth `nu0` observations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalPrior {
    pub mu0: f64,
    pub kappa0: f64,
    pub nu0: f64,
    pub sigma0_sq: f64,
}

impl NormalPrior {
    pub fn new(mu0: f64, kappa0: f64, nu0: f64, sigma0_sq: f64) -> Result<Self> {
        if !mu0.is_finite() {
            return Err(invalid("prior mean must be finite"));
        }
        if !(kappa0 >= 0.0 && kappa0.is_finite()) || !(nu0 >= 0.0 && nu0.is_finite()) {
            return Err(invalid(format!("kappa0 and nu0 must be non-negative, got {kappa0}, {nu0}")));
        }
        if !(sigma0_sq > 0.0 && sigma0_sq.is_finite()) {
            return Err(invalid(format!("sigma0_sq must be positive, got {sigma0_sq}")));
        }
        Ok(Self { mu0, kappa0, nu0, sigma0_sq })
    }

    /// Nearly flat prior: a thousandth of an observation on both the mean
    /// and the variance.
    pub fn low_informative() -> Self {
        Self { mu0: 0.0, kappa0: 1e-3, nu0: 1e-3, sigma0_sq: 1.0 }
    }

    /// Both pseudo-counts positive, so the prior itself is a distribution.
    pub fn is_proper(&self) -> bool {
        self.kappa0 > 0.0 && self.nu0 > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalMeanPosterior {
    pub mu_n: f64,
    pub kappa_n: f64,
    pub nu_n: f64,
    pub sigma2_n: f64,
}

impl NormalMeanPosterior {
    /// Scale of the Student-t marginal of the mean.
    pub fn scale(&self) -> f64 {
        (self.sigma2_n / self.kappa_n).sqrt()
    }

    pub fn cdf(&self, theta: f64) -> Result<f64> {
        student_t_cdf((theta - self.mu_n) / self.scale(), self.nu_n)
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        Ok(self.mu_n + self.scale() * student_t_quantile(p, self.nu_n)?)
    }
}

pub fn mean_posterior(stats: &SampleStats, prior: &NormalPrior) -> Result<NormalMeanPosterior> {
    let n = stats.n as f64;
    let kappa_n = prior.kappa0 + n;
    let nu_n = prior.nu0 + n;
    if kappa_n <= 0.0 || nu_n <= 0.0 {
        return Err(Error::ImproperPosterior(format!(
            "no data and a flat prior (kappa0={}, nu0={})",
            prior.kappa0, prior.nu0
        )));
    }
    let mu_n = (prior.kappa0 * prior.mu0 + n * stats.ybar) / kappa_n;
    let ss = if stats.n > 1 { (n - 1.0) * stats.s2 } else { 0.0 };
    let shrink = prior.kappa0 * n / kappa_n * (stats.ybar - prior.mu0).powi(2);
    let sigma2_n = (prior.nu0 * prior.sigma0_sq + ss + shrink) / nu_n;
    if !(sigma2_n > 0.0 && sigma2_n.is_finite()) {
        return Err(Error::Numerical(format!(
            "degenerate posterior variance {sigma2_n} (zero sample variance with nu0 = 0)"
        )));
    }
    Ok(NormalMeanPosterior { mu_n, kappa_n, nu_n, sigma2_n })
}

pub fn mean_interval_mass(post: &NormalMeanPosterior, interval: &IntervalHypothesis) -> Result<f64> {
    let inside = (post.cdf(interval.upper)? - post.cdf(interval.lower)?).max(0.0);
    Ok(match interval.region {
        Region::Inside => inside,
        Region::Outside => 1.0 - inside,
    })
}

/// Exact summary of the posterior of a single mean.
pub fn mean_summary(post: &NormalMeanPosterior, pair: &HypothesisPair) -> Result<PosteriorSummary> {
    require_scale(pair, Scale::Natural, "mean test")?;
    let alpha = 1.0 - pair.cri_level;
    let half = post.scale() * student_t_quantile(1.0 - alpha / 2.0, post.nu_n)?;
    Ok(PosteriorSummary {
        point: post.mu_n,
        cri: CredibleInterval { lower: post.mu_n - half, upper: post.mu_n + half, level: pair.cri_level },
        mass_hp: mean_interval_mass(post, &pair.h_p)?,
        mass_ha: mean_interval_mass(post, &pair.h_a)?,
        scale: Scale::Natural,
        method: Method::Exact,
        warnings: Vec::new(),
    })
}

/// Monte Carlo posterior of `μ1 - μ2` for two independent groups.
///
/// Each draw samples `σ² ~ Scaled-Inv-χ²(νn, σn²)` and then
/// `μ ~ N(μn, σ² / κn)` per group.
pub fn mean_diff_two_groups(
    stats1: &SampleStats,
    stats2: &SampleStats,
    prior1: &NormalPrior,
    prior2: &NormalPrior,
    pair: &HypothesisPair,
    mc: &McOptions,
) -> Result<PosteriorSummary> {
    mc.validate()?;
    require_scale(pair, Scale::Natural, "mean difference")?;
    if stats1.n < 2 || stats2.n < 2 {
        return Err(invalid("each group needs at least two observations"));
    }
    let post1 = mean_posterior(stats1, prior1)?;
    let post2 = mean_posterior(stats2, prior2)?;
    let var1 = ScaledInvChi2::new(post1.nu_n, post1.sigma2_n)?;
    let var2 = ScaledInvChi2::new(post2.nu_n, post2.sigma2_n)?;
    let mut rng = mc.stream.rng();
    let draws = (0..mc.draws)
        .map(|_| {
            let z1: f64 = StandardNormal.sample(&mut rng);
            let mu1 = post1.mu_n + z1 * (var1.sample(&mut rng) / post1.kappa_n).sqrt();
            let z2: f64 = StandardNormal.sample(&mut rng);
            let mu2 = post2.mu_n + z2 * (var2.sample(&mut rng) / post2.kappa_n).sqrt();
            mu1 - mu2
        })
        .collect();
    Ok(summarize_draws(draws, pair, Scale::Natural, mc.method()))
}
