//! Rate estimation helpers.

use serde::{Deserialize, Serialize};

/// Two-sided 95% standard-normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// A rate with its Wilson 95% confidence interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    /// Point estimate successes/trials.
    pub rate: f64,
    /// Wilson interval lower bound.
    pub lo: f64,
    /// Wilson interval upper bound.
    pub hi: f64,
}

/// Wilson score interval at 95% confidence for `successes` out of `trials`.
///
/// Well-behaved near 0 and 1, where the asymptotic regimes push the rates.
pub fn wilson(successes: u64, trials: u64) -> RateEstimate {
    assert!(trials > 0, "wilson interval needs at least one trial");
    assert!(successes <= trials);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let radius = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    RateEstimate {
        rate: p,
        lo: ((center - radius) / denom).max(0.0),
        hi: ((center + radius) / denom).min(1.0),
    }
}
