//! One end-to-end acquisition trial: sample a channel, synthesize the
//! observation, run the ML synchronizer, and score the result.
//!
//! Run with:
//! ```bash
//! cargo run --release --example synchronize_trial
//! ```

use ppm_sync::channel::{sample_channel, synthesize_observation};
use ppm_sync::detect::{evaluate_trial, ml_synchronize};
use ppm_sync::params::CanonicalParams;
use ppm_sync::seeding;

fn main() {
    let c = CanonicalParams::new(64, 4, 6.0).unwrap();
    let mut rng = seeding::stream(11);

    let channel = sample_channel(&c, &mut rng).unwrap();
    let obs = synthesize_observation(&channel, &c, &mut rng, true).unwrap();
    let est = ml_synchronize(&obs, c.num_paths).unwrap();
    let trial = evaluate_trial(&obs, &est).unwrap();

    println!(
        "M = {}, L = {}, A = {:.4}\n",
        c.num_positions,
        c.num_paths,
        c.amplitude()
    );
    println!("true delays     : {:?}", channel.delays());
    println!("ML selection    : {:?}", est.positions());
    println!("correlator score: {:.4}", est.score());
    println!();
    println!("captured {} of {} paths", trial.capture_count, c.num_paths);
    println!(
        "zero capture = {}, any miss = {}",
        trial.zero_capture, trial.any_miss
    );
    println!(
        "events: S_L > B_1 = {}, S_1 > B_L = {}",
        trial.event_sl_gt_b1, trial.event_s1_gt_bl
    );

    // A bar chart of the received vector, path positions marked.
    println!("\nreceived samples (* = true path, + = selected):");
    let max = obs.samples().iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
    for (i, &y) in obs.samples().iter().enumerate() {
        let bar = ((y.max(0.0) / max) * 40.0) as usize;
        let mark = match (channel.contains(i), est.positions().contains(&i)) {
            (true, true) => "*+",
            (true, false) => "* ",
            (false, true) => " +",
            (false, false) => "  ",
        };
        if channel.contains(i) || est.positions().contains(&i) {
            println!("  {i:>3} {mark} {:>7.3} {}", y, "#".repeat(bar));
        }
    }
}
