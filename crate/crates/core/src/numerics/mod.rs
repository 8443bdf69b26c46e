//! Special functions and seeded random sampling.

mod sampling;
mod special;

pub use sampling::{
    beta_draws, sample_beta, sample_binomial, sample_normal, sample_scaled_inv_chi2, ScaledInvChi2,
    SeededStream, StreamRng,
};
pub(crate) use sampling::normal_dist;
pub use special::{
    beta_quantile, ln_beta, ln_gamma, normal_cdf, normal_quantile, reg_inc_beta, student_t_cdf,
    student_t_quantile,
};

/// Empirical quantile with linear interpolation between order statistics
/// (the `type 7` definition). Reorders `values` in place.
pub fn empirical_quantile(values: &mut [f64], p: f64) -> f64 {
    assert!(!values.is_empty(), "empirical quantile of an empty sample");
    let n = values.len();
    let h = (n - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    let (_, lo_val, upper) = values.select_nth_unstable_by(lo, f64::total_cmp);
    let lo_val = *lo_val;
    if frac == 0.0 || upper.is_empty() {
        return lo_val;
    }
    let hi_val = upper.iter().copied().fold(f64::INFINITY, f64::min);
    lo_val + frac * (hi_val - lo_val)
}
