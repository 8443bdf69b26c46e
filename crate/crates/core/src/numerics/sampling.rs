//! Seeded random streams and the samplers the Monte Carlo engines draw from.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Binomial, ChiSquared, Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A reproducible random stream identified by `(seed, stream_id)`.
///
/// The stream id selects an independent ChaCha keystream for the same key,
/// so replication `k` of a simulation always sees the same draws no matter
/// how many workers run or in which order replications are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeededStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl SeededStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Same seed, different stream.
    pub fn with_stream(self, stream_id: u64) -> Self {
        Self { stream_id, ..self }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

pub type StreamRng = ChaCha8Rng;

fn beta_dist(a: f64, b: f64) -> Result<Beta<f64>> {
    if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
        return Err(invalid(format!("beta parameters must be positive, got a={a}, b={b}")));
    }
    Beta::new(a, b).map_err(|e| invalid(format!("beta({a}, {b}): {e}")))
}

pub fn sample_beta(a: f64, b: f64, rng: &mut StreamRng) -> Result<f64> {
    Ok(beta_dist(a, b)?.sample(rng))
}

/// `count` independent Beta(a, b) draws.
pub fn beta_draws(a: f64, b: f64, count: usize, rng: &mut StreamRng) -> Result<Vec<f64>> {
    let dist = beta_dist(a, b)?;
    Ok(dist.sample_iter(rng).take(count).collect())
}

pub fn sample_binomial(n: u64, p: f64, rng: &mut StreamRng) -> Result<u64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("binomial probability must lie in [0, 1], got {p}")));
    }
    let dist = Binomial::new(n, p).map_err(|e| invalid(format!("binomial({n}, {p}): {e}")))?;
    Ok(dist.sample(rng))
}

pub fn sample_normal(mean: f64, sd: f64, rng: &mut StreamRng) -> Result<f64> {
    Ok(normal_dist(mean, sd)?.sample(rng))
}

pub(crate) fn normal_dist(mean: f64, sd: f64) -> Result<Normal<f64>> {
    if !(sd > 0.0 && sd.is_finite()) || !mean.is_finite() {
        return Err(invalid(format!("normal needs finite mean and positive sd, got mean={mean}, sd={sd}")));
    }
    Normal::new(mean, sd).map_err(|e| invalid(format!("normal({mean}, {sd}): {e}")))
}

/// Scaled inverse chi-square draw: `nu * s2 / X` with `X ~ χ²(nu)`.
pub fn sample_scaled_inv_chi2(nu: f64, s2: f64, rng: &mut StreamRng) -> Result<f64> {
    Ok(ScaledInvChi2::new(nu, s2)?.sample(rng))
}

/// Reusable scaled inverse chi-square sampler.
#[derive(Debug, Clone, Copy)]
pub struct ScaledInvChi2 {
    nu: f64,
    s2: f64,
    chi2: ChiSquared<f64>,
}

impl ScaledInvChi2 {
    pub fn new(nu: f64, s2: f64) -> Result<Self> {
        if !(nu > 0.0 && nu.is_finite()) || !(s2 > 0.0 && s2.is_finite()) {
            return Err(invalid(format!("scaled inverse chi-square needs nu > 0 and s2 > 0, got nu={nu}, s2={s2}")));
        }
        let chi2 = ChiSquared::new(nu).map_err(|e| invalid(format!("chi-square({nu}): {e}")))?;
        Ok(Self { nu, s2, chi2 })
    }

    pub fn sample(&self, rng: &mut StreamRng) -> f64 {
        self.nu * self.s2 / self.chi2.sample(rng)
    }
}
