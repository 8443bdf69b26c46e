//! Bayesian two-interval test (2IT).
//!
//! Two interval hypotheses are fixed before looking at the data: `H_P`, the
//! range of parameter values in which the sought effect is *present*, and
//! `H_A`, the range in which it is *absent*. After fitting a conjugate
//! posterior the test reports `Pr(H_P | D)`, `Pr(H_A | D)`, their ratio and a
//! verdict: accept `H_P`, accept `H_A`, serendipity (a precise posterior that
//! lies outside both intervals) or insufficient power.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: incomplete beta, normal and Student-t functions, seeded
//!   random streams and samplers.
//! - [`hypothesis`]: interval hypotheses, pairs and construction recipes.
//! - [`posterior`]: Beta-Binomial, two-proportion Monte Carlo, normal mean
//!   and log-scale summary posteriors.
//! - [`decision`]: verdicts, posterior ratio, Bayes factor, prior masses.
//! - [`simulation`]: operating characteristics and selection-bias tables.
//! - [`cli`]: the `twoit` command line front end.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory, one per
//! capability (`cargo run --example hajek_relative_risk`, ...).
//!
//! ```
//! use twoit::hypothesis::{DecisionRule, ratio_pair_from_target};
//! use twoit::numerics::SeededStream;
//! use twoit::posterior::{two_prop_ratio_posterior, BetaPrior, McOptions, RatioMeasure, TwoPropData};
//! use twoit::decision::{evaluate, Outcome};
//!
//! let pair = ratio_pair_from_target(1.7, 0.95, DecisionRule::ProbabilityThreshold).unwrap();
//! let data = TwoPropData::new(79, 438, 44, 446).unwrap();
//! let mc = McOptions::new(100_000, SeededStream::new(7, 0));
//! let summary = two_prop_ratio_posterior(&data, RatioMeasure::RiskRatio, BetaPrior::uniform(), &pair, &mc).unwrap();
//! let verdict = evaluate(&summary, &pair).unwrap();
//! assert!((summary.mass_hp - 0.849).abs() < 0.02);
//! assert_eq!(verdict.outcome, Outcome::InsufficientPower);
//! ```

pub mod cli;
pub mod decision;
pub mod error;
pub mod hypothesis;
pub mod numerics;
pub mod posterior;
pub mod simulation;

pub use error::{Error, Result};
