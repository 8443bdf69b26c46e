//! Reference values computed independently (arbitrary-precision
//! arithmetic, quadrature or closed forms) and frozen here.

mod common;

use twoit::cli::or_pair;
use twoit::decision::{prior_interval_mass, PriorSpec};
use twoit::hypothesis::{HypothesisLabel, IntervalHypothesis, Scale};
use twoit::numerics::{
    beta_draws, beta_quantile, ln_gamma, normal_cdf, normal_quantile, reg_inc_beta, student_t_cdf, student_t_quantile,
    SeededStream,
};
use twoit::posterior::{
    beta_interval_mass, mean_interval_mass, mean_posterior, one_prop_posterior, BetaPrior, NormalPrior, SampleStats,
};

fn close(got: f64, want: f64, tol: f64) {
    assert!((got - want).abs() <= tol, "got {got}, want {want} (tol {tol})");
}

#[test]
fn incomplete_beta_reference_points() {
    close(reg_inc_beta(0.72, 131.5, 50.5).unwrap(), 0.459_982_329_126_261_14, 1e-12);
    close(reg_inc_beta(1e-6, 0.5, 0.5).unwrap(), 6.366_198_784_709_244_7e-4, 1e-15);
    close(reg_inc_beta(0.4, 2000.0, 3000.0).unwrap(), 0.500_767_787_945_590_8, 1e-10);
}

#[test]
fn beta_quantile_reference_point() {
    close(beta_quantile(0.975, 79.5, 359.5).unwrap(), 0.218_414_507_631_641_83, 1e-10);
}

#[test]
fn beta_interval_mass_matches_quadrature() {
    let post = one_prop_posterior(79, 438, BetaPrior::uniform()).unwrap();
    assert_eq!((post.a, post.b), (80.0, 360.0));
    let h = IntervalHypothesis::new(HypothesisLabel::Present, 0.15, 0.21, Scale::Natural).unwrap();
    let mass = beta_interval_mass(&post, &h).unwrap().mass;
    close(mass, 0.896_871_643_693_113_4, 1e-10);
    let quad = common::integrate(&|x| common::beta_pdf(x, 80.0, 360.0), 0.15, 0.21, 1e-13);
    close(mass, quad, 1e-8);
}

#[test]
fn gamma_and_normal_reference_points() {
    close(ln_gamma(100.5), 361.435_540_467_777_62, 1e-10);
    close(ln_gamma(0.5), 0.5 * std::f64::consts::PI.ln(), 1e-13);
    close(normal_cdf(1.96), 0.975_002_104_851_779_6, 1e-14);
    close(normal_quantile(0.999), 3.090_232_306_167_813_5, 1e-12);
}

#[test]
fn student_t_reference_points() {
    close(student_t_cdf(2.0, 5.0).unwrap(), 0.949_030_260_585_070_9, 1e-12);
    close(student_t_quantile(0.975, 3.0).unwrap(), 3.182_446_305_284_263, 1e-10);
}

#[test]
fn conjugate_normal_update_reference() {
    let prior = NormalPrior::new(0.0, 1.0, 1.0, 9.0).unwrap();
    let post = mean_posterior(&SampleStats::new(100, 1.02, 8.9).unwrap(), &prior).unwrap();
    close(post.mu_n, 1.009_900_990_099_01, 1e-12);
    close(post.sigma2_n, 8.823_070_287_226_741, 1e-12);
    assert_eq!((post.kappa_n, post.nu_n), (101.0, 101.0));
    close(post.quantile(0.975).unwrap(), 1.596_217_283_792_723, 1e-9);
    let h = IntervalHypothesis::new(HypothesisLabel::Present, 0.5, 1.5, Scale::Natural).unwrap();
    close(mean_interval_mass(&post, &h).unwrap(), 0.906_033_209_908_144_8, 1e-9);
}

#[test]
fn beta_draws_pass_kolmogorov_smirnov() {
    let mut rng = SeededStream::new(5, 0).rng();
    let mut xs = beta_draws(2.0, 5.0, 20_000, &mut rng).unwrap();
    xs.sort_by(f64::total_cmp);
    let cdf = |x: f64| 1.0 - (1.0 - x).powi(6) - 6.0 * x * (1.0 - x).powi(5);
    let n = xs.len() as f64;
    let d = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max);
    assert!(d < 1.95 / n.sqrt(), "KS distance {d}");
}

#[test]
fn log_normal_prior_mass() {
    let pair = or_pair().unwrap();
    let sd = 20f64.ln() / 1.96;
    let (_, ha) = prior_interval_mass(&PriorSpec::LogNormal { sd }, &pair, 0, SeededStream::new(0, 1)).unwrap();
    close(ha, 0.052_339_903_514_647_96, 1e-12);
}

#[test]
fn jeffreys_one_prop_mass_matches_quadrature() {
    let post = one_prop_posterior(7, 40, BetaPrior::jeffreys()).unwrap();
    let h = IntervalHypothesis::new(HypothesisLabel::Absent, 0.1, 0.2, Scale::Natural).unwrap();
    let quad = common::integrate(&|x| common::beta_pdf(x, post.a, post.b), 0.1, 0.2, 1e-13);
    close(beta_interval_mass(&post, &h).unwrap().mass, quad, 1e-9);
}
