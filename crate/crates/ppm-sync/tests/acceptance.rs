//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime (visible under `cargo test -- --nocapture`).
//!
//! The two regime sweeps are shared between criteria 6-8 through lazily
//! computed statics, so the suite pays for each 2000-trial ladder once.

use std::sync::LazyLock;
use std::time::{Duration, Instant};

use ppm_sync::channel::{sample_channel, synthesize_observation, Observation};
use ppm_sync::detect::{brute_force_correlator, evaluate_trial, ml_synchronize, random_baseline};
use ppm_sync::order_stats::{
    cramer_mean, cramer_var, empirical_order_stat, order_stat_oracle, OrderStatQuery,
};
use ppm_sync::params::CanonicalParams;
use ppm_sync::seeding;
use ppm_sync::sweep::{
    run_sweep, write_csv, Detector, Mode, OutputFormat, RegimeConfig, SweepConfig, SweepResult,
    WorkerCount,
};

/// Print the per-criterion PASS line, enforcing the stated runtime budget
/// where one exists. Criteria sharing the lazily computed sweeps may pay
/// for them on first access, so only criteria with stated budgets check
/// time, and the sweep statics enforce their own.
fn report(criterion: &str, started: Instant, budget: Option<Duration>) {
    let elapsed = started.elapsed();
    if let Some(budget) = budget {
        assert!(
            elapsed <= budget,
            "criterion {criterion}: exceeded the {budget:?} runtime budget ({elapsed:?})"
        );
    }
    println!("criterion {criterion}: PASS ({elapsed:.1?})");
}

#[test]
fn criterion_01_ml_equals_brute_force_correlator() {
    let started = Instant::now();
    let mut rng = seeding::stream(0xACCE_0001);
    let mut checked = 0u32;
    for m in 1..=8usize {
        for l in 1..=m {
            for _ in 0..100 {
                let samples: Vec<f64> =
                    (0..m).map(|_| rand::Rng::random::<f64>(&mut rng)).collect();
                let obs = Observation::from_samples(samples);
                let ml = ml_synchronize(&obs, l).unwrap();
                let bf = brute_force_correlator(&obs, l).unwrap();
                assert_eq!(
                    ml.positions(),
                    bf.positions(),
                    "detectors disagree at M={m}, L={l}"
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 3600); // 36 (M, L) pairs x 100 observations
    report(
        "01 ml-vs-correlator-oracle",
        started,
        Some(Duration::from_secs(10)),
    );
}

#[test]
fn criterion_02_oracle_matches_closed_forms() {
    let started = Instant::now();
    let (mean2, _) = order_stat_oracle(1, 2).unwrap();
    let expect2 = 1.0 / std::f64::consts::PI.sqrt();
    assert!(
        (mean2 - expect2).abs() < 1e-6,
        "max of 2: {mean2} vs {expect2}"
    );
    let (mean3, _) = order_stat_oracle(1, 3).unwrap();
    let expect3 = 1.5 / std::f64::consts::PI.sqrt();
    assert!(
        (mean3 - expect3).abs() < 1e-6,
        "max of 3: {mean3} vs {expect3}"
    );
    report(
        "02 oracle-closed-forms",
        started,
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_03_cramer_converges_with_population() {
    let started = Instant::now();
    for nu in [1usize, 2, 5] {
        let mean_err = |g: usize| {
            let (oracle, _) = order_stat_oracle(nu, g).unwrap();
            let q = OrderStatQuery::new(nu, g, 0.0, 1.0).unwrap();
            (cramer_mean(&q).unwrap() - oracle).abs()
        };
        let (small, large) = (mean_err(100), mean_err(1_000_000));
        assert!(
            large < small,
            "nu = {nu}: mean error grew from {small} to {large}"
        );
    }
    let var_err = |g: usize| {
        let (_, oracle) = order_stat_oracle(1, g).unwrap();
        let q = OrderStatQuery::new(1, g, 0.0, 1.0).unwrap();
        (cramer_var(&q).unwrap() - oracle).abs()
    };
    assert!(var_err(1_000_000) < var_err(100));
    report(
        "03 cramer-convergence",
        started,
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn criterion_04_empirical_agrees_with_oracle() {
    let started = Instant::now();
    let mut rng = seeding::stream(0xACCE_0004);
    for (nu, g) in [(1usize, 100usize), (10, 1000)] {
        let (oracle_mean, _) = order_stat_oracle(nu, g).unwrap();
        let (mean, _, se) = empirical_order_stat(nu, g, 100_000, &mut rng).unwrap();
        assert!(
            (mean - oracle_mean).abs() < 4.0 * se,
            "(nu={nu}, G={g}): {mean} vs {oracle_mean} (se {se})"
        );
    }
    report(
        "04 empirical-vs-oracle",
        started,
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn criterion_05_random_baseline_hypergeometric_mean() {
    let started = Instant::now();
    let (m, l) = (16usize, 4usize);
    let truth = [1usize, 5, 6, 12];
    let trials = 100_000;
    let mut rng = seeding::stream(0xACCE_0005);
    let mut total = 0usize;
    for _ in 0..trials {
        let est = random_baseline(m, l, &mut rng).unwrap();
        total += est.positions().iter().filter(|p| truth.contains(p)).count();
    }
    let mean = total as f64 / trials as f64;
    // Hypergeometric: mean L^2/M = 1, variance L(L/M)(1-L/M)(M-L)/(M-1) = 0.6.
    let se = (0.6_f64 / trials as f64).sqrt();
    assert!(
        (mean - 1.0).abs() < 3.0 * se,
        "overlap mean {mean}, tolerance {}",
        3.0 * se
    );
    report(
        "05 random-baseline-law",
        started,
        Some(Duration::from_secs(10)),
    );
}

const LADDER: [usize; 4] = [1 << 10, 1 << 14, 1 << 18, 1 << 22];

fn regime_config(a: f64) -> SweepConfig {
    SweepConfig {
        mode: Mode::Canonical,
        regime: Some(RegimeConfig {
            a,
            ladder: LADDER.to_vec(),
            k: 2.0,
        }),
        points: None,
        physical: None,
        trials: 2000,
        master_seed: 0xACCE_5EED,
        worker_count: WorkerCount::Auto,
        detectors: vec![Detector::Ml, Detector::Random],
        output_path: None,
        output_format: OutputFormat::Csv,
    }
}

static REGIME1: LazyLock<SweepResult> = LazyLock::new(|| {
    let started = Instant::now();
    let result = run_sweep(&regime_config(0.25)).unwrap();
    assert!(
        started.elapsed() <= Duration::from_secs(15 * 60),
        "regime-1 sweep exceeded its 15 minute budget"
    );
    result
});

static REGIME2: LazyLock<SweepResult> = LazyLock::new(|| {
    let started = Instant::now();
    let result = run_sweep(&regime_config(0.75)).unwrap();
    assert!(
        started.elapsed() <= Duration::from_secs(20 * 60),
        "regime-2 sweep exceeded its 20 minute budget"
    );
    result
});

/// Point estimates may not drop by more than half the combined interval
/// width between consecutive ladder points.
fn assert_trend_non_decreasing(rates: &[(f64, f64, f64)], what: &str) {
    for (i, w) in rates.windows(2).enumerate() {
        let (prev, prev_lo, prev_hi) = w[0];
        let (next, next_lo, next_hi) = w[1];
        let slack = 0.5 * ((prev_hi - prev_lo) + (next_hi - next_lo));
        assert!(
            next >= prev - slack,
            "{what} dropped at step {i}: {prev} -> {next} (slack {slack})"
        );
    }
}

#[test]
fn criterion_06_zero_capture_trend_in_sparse_regime() {
    let started = Instant::now();
    let result = &*REGIME1;
    let rates: Vec<(f64, f64, f64)> = (0..LADDER.len())
        .map(|i| {
            let s = result.detector_stats(i, Detector::Ml).unwrap();
            (s.zero_capture.rate, s.zero_capture.lo, s.zero_capture.hi)
        })
        .collect();
    assert_trend_non_decreasing(&rates, "zero-capture rate");
    let (first, ..) = rates[0];
    let (last, ..) = rates[LADDER.len() - 1];
    assert!(
        last > first,
        "final zero-capture rate {last} does not exceed the first {first}"
    );
    assert!(last >= 0.9, "final zero-capture rate {last} below 0.9");
    report(
        "06 regime-1-zero-capture-trend",
        started,
        Some(Duration::from_secs(15 * 60)),
    );
}

#[test]
fn criterion_07_miss_trend_in_dense_regime() {
    let started = Instant::now();
    let result = &*REGIME2;
    let rates: Vec<(f64, f64, f64)> = (0..LADDER.len())
        .map(|i| {
            let s = result.detector_stats(i, Detector::Ml).unwrap();
            (s.miss.rate, s.miss.lo, s.miss.hi)
        })
        .collect();
    assert_trend_non_decreasing(&rates, "miss rate");
    let (last, ..) = rates[LADDER.len() - 1];
    assert!(last >= 0.99, "final miss rate {last} below 0.99");
    report(
        "07 regime-2-miss-trend",
        started,
        Some(Duration::from_secs(20 * 60)),
    );
}

#[test]
fn criterion_08_ml_dominates_random_selection() {
    let started = Instant::now();
    for (name, result) in [("regime 1", &*REGIME1), ("regime 2", &*REGIME2)] {
        for i in 0..LADDER.len() {
            let ml = result.detector_stats(i, Detector::Ml).unwrap();
            let random = result.detector_stats(i, Detector::Random).unwrap();
            let combined_se =
                (ml.capture_fraction_se.powi(2) + random.capture_fraction_se.powi(2)).sqrt();
            assert!(
                ml.capture_fraction.rate >= random.capture_fraction.rate - 3.0 * combined_se,
                "{name}, point {i}: ml {} vs random {} (3se = {})",
                ml.capture_fraction.rate,
                random.capture_fraction.rate,
                3.0 * combined_se
            );
        }
    }
    report("08 ml-dominates-random", started, None);
}

#[test]
fn criterion_09_events_match_estimates() {
    let started = Instant::now();
    // 10^4 trials mixed over operating points that produce captures, misses,
    // and zero captures.
    let points = [
        (64usize, 4usize, 0.8),
        (256, 16, 2.0),
        (1024, 6, 2.0),
        (32, 8, 1.0),
        (16, 8, 6.0),
    ];
    let mut mismatches = 0u32;
    let mut trials = 0u32;
    for (idx, &(m, l, k)) in points.iter().enumerate() {
        let c = CanonicalParams::new(m, l, k).unwrap();
        let mut rng = seeding::stream(seeding::derive_seed(0xACCE_0009, idx as u64));
        for _ in 0..2000 {
            let ch = sample_channel(&c, &mut rng).unwrap();
            let obs = synthesize_observation(&ch, &c, &mut rng, true).unwrap();
            let est = ml_synchronize(&obs, l).unwrap();
            let trial = evaluate_trial(&obs, &est).unwrap();
            if trial.zero_capture != trial.event_sl_gt_b1 || trial.any_miss != trial.event_s1_gt_bl
            {
                mismatches += 1;
            }
            trials += 1;
        }
    }
    assert_eq!(trials, 10_000);
    assert_eq!(mismatches, 0, "event/estimate mismatches out of {trials}");
    report("09 event-estimate-consistency", started, None);
}

#[test]
fn criterion_10_worker_count_does_not_change_csv_bytes() {
    let started = Instant::now();
    let make = |workers| SweepConfig {
        mode: Mode::Canonical,
        regime: Some(RegimeConfig {
            a: 0.25,
            ladder: vec![1 << 10, 1 << 12],
            k: 2.0,
        }),
        points: None,
        physical: None,
        trials: 500,
        master_seed: 0xACCE_0010,
        worker_count: workers,
        detectors: vec![Detector::Ml, Detector::Random],
        output_path: None,
        output_format: OutputFormat::Csv,
    };
    let csv_bytes = |workers| {
        let result = run_sweep(&make(workers)).unwrap();
        let mut buf = Vec::new();
        write_csv(&result, &mut buf).unwrap();
        buf
    };
    let single = csv_bytes(WorkerCount::Fixed(1));
    let eight = csv_bytes(WorkerCount::Fixed(8));
    assert!(!single.is_empty());
    assert_eq!(single, eight, "CSV bytes differ between 1 and 8 workers");
    report("10 worker-count-determinism", started, None);
}
