//! Channel sampling statistics: delays are uniform over all C(M, L) subsets
//! and the observation carries amplitude A on path positions, unit-variance
//! noise elsewhere.
//!
//! Run with:
//! ```bash
//! cargo run --release --example channel_statistics
//! ```

use std::collections::HashMap;

use ppm_sync::channel::{sample_channel, synthesize_observation};
use ppm_sync::params::CanonicalParams;
use ppm_sync::seeding;

fn main() {
    let mut rng = seeding::stream(2024);

    println!("=== Subset frequencies, M = 4, L = 2 (6 subsets) ===\n");
    let c = CanonicalParams::new(4, 2, 1.0).unwrap();
    let draws = 60_000;
    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
    for _ in 0..draws {
        let ch = sample_channel(&c, &mut rng).unwrap();
        *counts.entry(ch.delays().to_vec()).or_default() += 1;
    }
    let mut keys: Vec<_> = counts.keys().cloned().collect();
    keys.sort();
    for key in keys {
        let f = counts[&key] as f64 / draws as f64;
        println!("  {key:?}: {f:.4}  (expected {:.4})", 1.0 / 6.0);
    }

    println!("\n=== Observation moments, M = 1024, L = 16, k = 2 ===\n");
    let c = CanonicalParams::new(1024, 16, 2.0).unwrap();
    let a = c.amplitude();
    let trials = 20_000;
    let (mut sig_sum, mut sig_sq, mut noise_sum, mut noise_sq) = (0.0, 0.0, 0.0, 0.0);
    let mut sig_n = 0u64;
    let mut noise_n = 0u64;
    for _ in 0..trials {
        let ch = sample_channel(&c, &mut rng).unwrap();
        let obs = synthesize_observation(&ch, &c, &mut rng, true).unwrap();
        // One signal position and one noise position per trial keeps the
        // samples independent.
        let d = ch.delays()[0];
        let s = obs.samples()[d];
        sig_sum += s;
        sig_sq += s * s;
        sig_n += 1;
        if let Some(i) = (0..obs.len()).find(|i| !ch.contains(*i)) {
            let z = obs.samples()[i];
            noise_sum += z;
            noise_sq += z * z;
            noise_n += 1;
        }
    }
    let sig_mean = sig_sum / sig_n as f64;
    let sig_var = sig_sq / sig_n as f64 - sig_mean * sig_mean;
    let noise_mean = noise_sum / noise_n as f64;
    let noise_var = noise_sq / noise_n as f64 - noise_mean * noise_mean;
    println!("  amplitude A = sqrt(k ln M / L) = {a:.5}");
    println!("  signal positions: mean {sig_mean:.5} (expect {a:.5}), var {sig_var:.5} (expect 1)");
    println!("  noise positions : mean {noise_mean:+.5} (expect 0), var {noise_var:.5} (expect 1)");

    let ch = sample_channel(&c, &mut rng).unwrap();
    let clean = synthesize_observation(&ch, &c, &mut rng, false).unwrap();
    let energy: f64 = clean.samples().iter().map(|s| s * s).sum();
    println!(
        "\n  noiseless energy sum = {energy:.9} = k ln M = {:.9}",
        c.snr_scale * (c.num_positions as f64).ln()
    );
}
