//! Discrete-time PPM multipath synchronization.
//!
//! A flash-PPM receiver over an M-position multipath channel must find the L
//! delay positions that carry signal energy. With equal path gains the
//! maximum-likelihood synchronizer reduces to picking the L largest received
//! samples, and its failure modes are governed by how the extremes of L
//! signal-bearing Gaussians compare against the extremes of M−L noise
//! Gaussians. This crate provides:
//!
//! * parameter models mapping physical (W, T_s, T_d, 𝓔, θ) systems onto the
//!   canonical (M, L, k) form ([`params`]);
//! * channel sampling and observation synthesis ([`channel`]);
//! * the ML synchronizer, a brute-force correlator oracle, a random
//!   baseline, and trial scoring ([`detect`]);
//! * asymptotic Gaussian order statistics with an exact quadrature oracle,
//!   the S_L-vs-B₁ dominance analysis, and the acquisition feasibility
//!   condition ([`order_stats`]);
//! * a reproducible parallel Monte Carlo sweep harness with Wilson
//!   confidence intervals and CSV/JSON export ([`sweep`]).
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release --example physical_params      # validation and canonical mapping
//! cargo run --release --example channel_statistics   # uniform subset law of path delays
//! cargo run --release --example synchronize_trial    # one end-to-end acquisition trial
//! cargo run --release --example detector_showdown    # ML vs brute force vs random
//! cargo run --release --example order_stat_accuracy  # asymptotics vs oracle vs Monte Carlo
//! cargo run --release --example dominance_analysis   # why sparse multipath defeats the ML detector
//! cargo run --release --example regime_sweep         # small two-regime Monte Carlo sweep
//! cargo run --release --example ml_feasibility       # path-count feasibility condition
//! ```
//!
//! A thin CLI wraps the sweep harness and the analytic reports:
//!
//! ```text
//! ppm-sync run --config sweep.toml --out results.csv
//! ppm-sync oracle --nu 3 --G 1000
//! ppm-sync report --M 4194304 --L 46 --k 2
//! ```
//!
//! # Quick start
//!
//! ```
//! use ppm_sync::params::CanonicalParams;
//! use ppm_sync::channel::{sample_channel, synthesize_observation};
//! use ppm_sync::detect::{ml_synchronize, evaluate_trial};
//! use ppm_sync::seeding;
//!
//! let c = CanonicalParams::new(1024, 6, 2.0).unwrap();
//! let mut rng = seeding::stream(7);
//! let channel = sample_channel(&c, &mut rng).unwrap();
//! let obs = synthesize_observation(&channel, &c, &mut rng, true).unwrap();
//! let est = ml_synchronize(&obs, c.num_paths).unwrap();
//! let trial = evaluate_trial(&obs, &est).unwrap();
//! assert!(trial.capture_count <= c.num_paths);
//! ```

pub mod channel;
pub mod detect;
pub mod error;
pub mod order_stats;
pub mod params;
pub mod seeding;
pub mod stats;
pub mod sweep;

pub use error::{Error, Result};
