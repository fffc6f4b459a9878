//! A small Monte Carlo sweep across both failure regimes, with CSV export.
//!
//! Regime 1 (a < 1/2, so L/sqrt(M) -> 0): the ML synchronizer's
//! zero-capture rate climbs toward 1. Regime 2 (1/2 <= a < 1, so
//! L/M -> 0): the rate of missing at least one path sits at 1.
//!
//! The full-size ladders live in the acceptance suite; this example uses a
//! reduced ladder so it finishes in seconds.
//!
//! Run with:
//! ```bash
//! cargo run --release --example regime_sweep
//! ```

use ppm_sync::sweep::{
    run_sweep, write_csv, Detector, Mode, OutputFormat, RegimeConfig, SweepConfig, WorkerCount,
};

fn sweep(a: f64) -> SweepConfig {
    SweepConfig {
        mode: Mode::Canonical,
        regime: Some(RegimeConfig {
            a,
            ladder: vec![1 << 10, 1 << 12, 1 << 14, 1 << 16],
            k: 2.0,
        }),
        points: None,
        physical: None,
        trials: 400,
        master_seed: 7,
        worker_count: WorkerCount::Auto,
        detectors: vec![Detector::Ml, Detector::Random],
        output_path: None,
        output_format: OutputFormat::Csv,
    }
}

fn main() {
    for (regime, a) in [(1, 0.25), (2, 0.75)] {
        let cfg = sweep(a);
        println!(
            "=== regime {regime}: L = ceil(M^{a}), k = 2, {} trials/point ===\n",
            cfg.trials
        );
        let result = run_sweep(&cfg).unwrap();
        println!(
            "{:>8} {:>7} {:>22} {:>22} {:>12}",
            "M", "L", "ml zero-capture", "ml miss", "ml capture"
        );
        for p in &result.points {
            let ml = p
                .detectors
                .iter()
                .find(|d| d.detector == Detector::Ml)
                .unwrap();
            println!(
                "{:>8} {:>7} {:>10.3} [{:.3},{:.3}] {:>10.3} [{:.3},{:.3}] {:>12.4}",
                p.num_positions,
                p.num_paths,
                ml.zero_capture.rate,
                ml.zero_capture.lo,
                ml.zero_capture.hi,
                ml.miss.rate,
                ml.miss.lo,
                ml.miss.hi,
                ml.capture_fraction.rate,
            );
        }
        println!();
    }

    // The same data as CSV, on stdout.
    let result = run_sweep(&sweep(0.25)).unwrap();
    println!("=== CSV export (regime 1) ===\n");
    let mut buf = Vec::new();
    write_csv(&result, &mut buf).unwrap();
    print!("{}", String::from_utf8(buf).unwrap());
}
