//! ML top-L selection versus the exhaustive correlator and the random
//! baseline.
//!
//! The correlator maximizes s^T y over all C(M, L) hypotheses; on every
//! problem small enough to enumerate it returns exactly the ML top-L set.
//! The random baseline captures L^2/M paths on average.
//!
//! Run with:
//! ```bash
//! cargo run --release --example detector_showdown
//! ```

use ppm_sync::channel::{sample_channel, synthesize_observation};
use ppm_sync::detect::{brute_force_correlator, evaluate_trial, ml_synchronize, random_baseline};
use ppm_sync::params::CanonicalParams;
use ppm_sync::seeding;

fn main() {
    let mut rng = seeding::stream(5);

    println!("=== ML = exhaustive correlator (M = 12, L = 3, C(12,3) = 220) ===\n");
    let c = CanonicalParams::new(12, 3, 2.0).unwrap();
    let mut agreements = 0;
    let checks = 2000;
    for _ in 0..checks {
        let ch = sample_channel(&c, &mut rng).unwrap();
        let obs = synthesize_observation(&ch, &c, &mut rng, true).unwrap();
        let ml = ml_synchronize(&obs, 3).unwrap();
        let bf = brute_force_correlator(&obs, 3).unwrap();
        assert_eq!(ml.positions(), bf.positions());
        agreements += 1;
    }
    println!("  {agreements}/{checks} observations: identical position sets\n");

    println!("=== Capture statistics (M = 256, L = 16, k = 4) ===\n");
    let (m, l) = (256usize, 16usize);
    let c = CanonicalParams::new(m, l, 4.0).unwrap();
    let trials = 5000;
    let (mut ml_total, mut rd_total) = (0usize, 0usize);
    for _ in 0..trials {
        let ch = sample_channel(&c, &mut rng).unwrap();
        let obs = synthesize_observation(&ch, &c, &mut rng, true).unwrap();
        let ml = ml_synchronize(&obs, 16).unwrap();
        ml_total += evaluate_trial(&obs, &ml).unwrap().capture_count;
        let rd = random_baseline(256, 16, &mut rng)
            .unwrap()
            .scored_against(&obs);
        rd_total += evaluate_trial(&obs, &rd).unwrap().capture_count;
    }
    let n = trials as f64;
    println!("  A = {:.4}", c.amplitude());
    println!("  ML mean captures     : {:.3} of 16", ml_total as f64 / n);
    println!(
        "  random mean captures : {:.3} of 16 (expected L^2/M = {:.3})",
        rd_total as f64 / n,
        16.0 * 16.0 / 256.0
    );
}
