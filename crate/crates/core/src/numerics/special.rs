//! Special functions used by the posterior engines.
//!
//! The regularized incomplete beta function is evaluated with the modified
//! Lentz continued fraction, falling back to the power series when the
//! fraction does not settle within the iteration cap. Quantiles are found by
//! bracketed Newton iteration on top of it.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{invalid, Error, Result};

const CF_MAX_ITER: usize = 500;
const CF_EPS: f64 = 1e-14;
const SERIES_MAX_ITER: usize = 100_000;
const TINY: f64 = 1e-300;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Remainder of Stirling's series, `ln Γ(x) - [(x - 1/2) ln x - x + ln √(2π)]`,
/// accurate to machine precision for `x >= 10`.
fn stirling_remainder(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    r * (1.0 / 12.0
        - r2 * (1.0 / 360.0
            - r2 * (1.0 / 1260.0
                - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360_360.0 - r2 / 156.0))))))
}

/// `ln B(a, b)`, stable when one or both arguments are large.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    let (small, large) = if a < b { (a, b) } else { (b, a) };
    if large < 10.0 {
        return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
    }
    let sum = small + large;
    if small < 10.0 {
        // ln Γ(large) - ln Γ(large + small) without cancellation
        let ratio = -(large - 0.5) * (small / large).ln_1p() - small * sum.ln()
            + small
            + stirling_remainder(large)
            - stirling_remainder(sum);
        return ln_gamma(small) + ratio;
    }
    -0.5 * sum.ln() + LN_SQRT_2PI + (small - 0.5) * (small / sum).ln()
        - (large - 0.5) * (small / large).ln_1p()
        + stirling_remainder(small)
        + stirling_remainder(large)
        - stirling_remainder(sum)
}

fn check_shape(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) || !(b > 0.0 && b.is_finite()) {
        return Err(invalid(format!("beta shape parameters must be positive and finite, got a={a}, b={b}")));
    }
    Ok(())
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    check_shape(a, b)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(invalid(format!("x must lie in [0, 1], got {x}")));
    }
    inc_beta_xy(x, 1.0 - x, a, b)
}

/// `I_x(a, b)` with the complement `y = 1 - x` supplied by the caller, so that
/// values of `x` close to one keep full relative precision in `y`.
pub(crate) fn inc_beta_xy(x: f64, y: f64, a: f64, b: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    if y <= 0.0 {
        return Ok(1.0);
    }
    let log_front = a * x.ln() + b * y.ln() - ln_beta(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok(lower_tail(x, a, b, log_front)?)
    } else {
        Ok(1.0 - lower_tail(y, b, a, log_front)?)
    }
}

/// `I_x(a, b)` for `x` on the rapidly converging side of the fraction.
fn lower_tail(x: f64, a: f64, b: f64, log_front: f64) -> Result<f64> {
    match continued_fraction(x, a, b) {
        Some(cf) => Ok((log_front.exp() * cf / a).clamp(0.0, 1.0)),
        None => power_series(x, a, b, log_front),
    }
}

/// Modified Lentz evaluation of the incomplete beta continued fraction.
fn continued_fraction(x: f64, a: f64, b: f64) -> Option<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < CF_EPS {
            return Some(h);
        }
    }
    None
}

/// `I_x(a, b) = x^a (1-x)^b / (a B(a,b)) * Σ_n [(a+b)_n / (a+1)_n] x^n`.
fn power_series(x: f64, a: f64, b: f64, log_front: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..SERIES_MAX_ITER {
        let n = n as f64;
        term *= (a + b + n) / (a + 1.0 + n) * x;
        sum += term;
        if term.abs() < CF_EPS * sum.abs() {
            return Ok((log_front.exp() * sum / a).clamp(0.0, 1.0));
        }
    }
    Err(Error::Numerical(format!(
        "incomplete beta did not converge for x={x}, a={a}, b={b} \
         (continued fraction cap {CF_MAX_ITER}, series cap {SERIES_MAX_ITER})"
    )))
}

fn beta_log_density(x: f64, a: f64, b: f64, ln_b: f64) -> f64 {
    (a - 1.0) * x.ln() + (b - 1.0) * (1.0 - x).ln() - ln_b
}

/// Quantile of the Beta(a, b) distribution.
///
/// Newton steps are taken from a normal-approximation starting point and
/// replaced by bisection whenever they leave the current bracket.
pub fn beta_quantile(p: f64, a: f64, b: f64) -> Result<f64> {
    check_shape(a, b)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("probability must lie in (0, 1), got {p}")));
    }
    let ln_b = ln_beta(a, b);
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    let mut x = initial_guess(p, a, b);
    let mut last_f = f64::NAN;
    for _ in 0..300 {
        let f = reg_inc_beta(x, a, b)? - p;
        last_f = f;
        if f == 0.0 {
            return Ok(x);
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let dens = beta_log_density(x, a, b, ln_b).exp();
        let mut next = if dens.is_finite() && dens > 0.0 { x - f / dens } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= 4.0 * f64::EPSILON * x.max(f64::MIN_POSITIVE) || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(x);
        }
    }
    Err(Error::Numerical(format!(
        "beta quantile did not converge for p={p}, a={a}, b={b}; bracket [{lo}, {hi}], residual {last_f}"
    )))
}

fn initial_guess(p: f64, a: f64, b: f64) -> f64 {
    let guess = if a >= 1.0 && b >= 1.0 {
        // normal approximation on the Beta moments
        let mean = a / (a + b);
        let sd = (a * b / ((a + b).powi(2) * (a + b + 1.0))).sqrt();
        mean + sd * normal_quantile(p)
    } else {
        let lna = (a / (a + b)).ln();
        let lnb = (b / (a + b)).ln();
        let t = (a * lna).exp() / a;
        let u = (b * lnb).exp() / b;
        let w = t + u;
        if p < t / w {
            (a * w * p).powf(1.0 / a)
        } else {
            1.0 - (b * w * (1.0 - p)).powf(1.0 / b)
        }
    };
    if guess.is_finite() {
        guess.clamp(1e-12, 1.0 - 1e-12)
    } else {
        0.5
    }
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / SQRT_2)
}

/// Standard normal quantile (Acklam's rational approximation refined by one
/// Halley step).
pub fn normal_quantile(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;
    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    let e = normal_cdf(x) - p;
    let u = e * (2.0 * PI).sqrt() * (0.5 * x * x).exp();
    x - u / (1.0 + 0.5 * x * u)
}

/// CDF of Student's t distribution with `nu` degrees of freedom.
pub fn student_t_cdf(t: f64, nu: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(invalid(format!("degrees of freedom must be positive, got {nu}")));
    }
    if t.is_nan() {
        return Err(invalid("t is NaN"));
    }
    if t.is_infinite() {
        return Ok(if t > 0.0 { 1.0 } else { 0.0 });
    }
    if t == 0.0 {
        return Ok(0.5);
    }
    let t2 = t * t;
    let x = nu / (nu + t2);
    let y = t2 / (nu + t2);
    // P(|T| > |t|) = I_x(nu/2, 1/2)
    let two_tail = inc_beta_xy(x, y, 0.5 * nu, 0.5)?;
    let tail = 0.5 * two_tail;
    Ok(if t > 0.0 { 1.0 - tail } else { tail })
}

/// Quantile of Student's t distribution with `nu` degrees of freedom.
pub fn student_t_quantile(p: f64, nu: f64) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(invalid(format!("degrees of freedom must be positive, got {nu}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("probability must lie in (0, 1), got {p}")));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    let two_tail = 2.0 * p.min(1.0 - p);
    let magnitude = if two_tail < 0.1 {
        let x = beta_quantile(two_tail, 0.5 * nu, 0.5)?;
        (nu * (1.0 - x) / x).sqrt()
    } else {
        // y = t² / (nu + t²) solves I_y(1/2, nu/2) = 1 - two_tail
        let y = beta_quantile(1.0 - two_tail, 0.5, 0.5 * nu)?;
        (nu * y / (1.0 - y)).sqrt()
    };
    Ok(if p > 0.5 { magnitude } else { -magnitude })
}
