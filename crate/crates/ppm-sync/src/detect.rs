//! Synchronizers and per-trial scoring.
//!
//! The maximum-likelihood synchronizer for equal-gain paths reduces to
//! picking the L largest received samples; [`brute_force_correlator`]
//! maximizes the correlation over all C(M, L) position hypotheses and serves
//! as its oracle on small problems. [`random_baseline`] selects positions
//! independently of the amplitudes.

use rand::Rng;

use crate::channel::{uniform_subset, Observation};
use crate::error::{Error, Result};

/// Largest hypothesis count [`brute_force_correlator`] will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 1_000_000;

/// A detector's output: L chosen positions and the correlation score.
#[derive(Clone, Debug, PartialEq)]
pub struct SyncEstimate {
    positions: Vec<usize>,
    score: f64,
}

impl SyncEstimate {
    fn new(mut positions: Vec<usize>, score: f64) -> Self {
        positions.sort_unstable();
        Self { positions, score }
    }

    /// Selected delay positions, sorted ascending.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Sum of the observation at the selected positions (0 for estimates
    /// produced without access to an observation).
    pub fn score(&self) -> f64 {
        self.score
    }

    /// Fill the score from an observation; for estimates produced without
    /// one, like [`random_baseline`]'s.
    pub fn scored_against(mut self, obs: &Observation) -> SyncEstimate {
        self.score = score_positions(obs, &self.positions);
        self
    }
}

/// Sum of the observation samples at the given positions.
pub fn score_positions(obs: &Observation, positions: &[usize]) -> f64 {
    positions.iter().map(|&p| obs.samples()[p]).sum()
}

/// Orders `a` before `b` when sample `a` is larger, breaking ties toward the
/// lower index. Total over all (finite) float samples.
fn better(samples: &[f64], a: usize, b: usize) -> std::cmp::Ordering {
    samples[b].total_cmp(&samples[a]).then_with(|| a.cmp(&b))
}

/// Maximum-likelihood synchronizer: the indices of the `num_paths` largest
/// samples, ties broken toward the lowest index.
///
/// Runs in O(M) expected time via quickselect; only the output set is part of
/// the contract.
pub fn ml_synchronize(obs: &Observation, num_paths: usize) -> Result<SyncEstimate> {
    let m = obs.len();
    if num_paths > m {
        return Err(Error::domain(format!(
            "cannot select {num_paths} positions from {m} samples"
        )));
    }
    if num_paths == 0 {
        return Ok(SyncEstimate::new(Vec::new(), 0.0));
    }
    let samples = obs.samples();
    let mut order: Vec<u32> = (0..m as u32).collect();
    if num_paths < m {
        order.select_nth_unstable_by(num_paths - 1, |&a, &b| {
            better(samples, a as usize, b as usize)
        });
    }
    let mut positions: Vec<usize> = order[..num_paths].iter().map(|&i| i as usize).collect();
    positions.sort_unstable();
    let score = score_positions(obs, &positions);
    Ok(SyncEstimate { positions, score })
}

/// C(n, k) for k <= n, saturating once past [`BRUTE_FORCE_LIMIT`].
fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if out > BRUTE_FORCE_LIMIT {
            return u128::MAX;
        }
    }
    out
}

/// Exhaustive correlator: maximizes the summed observation over every
/// C(M, L) subset of positions, returning the lexicographically smallest
/// maximizer.
///
/// Guarded to C(M, L) <= 10^6 hypotheses; larger problems should use
/// [`ml_synchronize`], which computes the same set.
pub fn brute_force_correlator(obs: &Observation, num_paths: usize) -> Result<SyncEstimate> {
    let m = obs.len();
    if num_paths > m {
        return Err(Error::domain(format!(
            "cannot select {num_paths} positions from {m} samples"
        )));
    }
    if num_paths == 0 {
        return Ok(SyncEstimate::new(Vec::new(), 0.0));
    }
    let hypotheses = binomial(m, num_paths);
    if hypotheses > BRUTE_FORCE_LIMIT {
        return Err(Error::domain(format!(
            "C({m}, {num_paths}) exceeds the {BRUTE_FORCE_LIMIT}-hypothesis \
             enumeration guard; use ml_synchronize instead"
        )));
    }

    let samples = obs.samples();
    // Enumerate subsets in lexicographic order; first-seen wins on equal
    // scores, so the reported maximizer is the lexicographically smallest.
    let mut subset: Vec<usize> = (0..num_paths).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        let score: f64 = subset.iter().map(|&i| samples[i]).sum();
        match &best {
            Some((s, _)) if score <= *s => {}
            _ => best = Some((score, subset.clone())),
        }
        // Advance to the next combination.
        let mut i = num_paths;
        loop {
            if i == 0 {
                let (score, positions) = best.unwrap();
                return Ok(SyncEstimate::new(positions, score));
            }
            i -= 1;
            if subset[i] != i + m - num_paths {
                subset[i] += 1;
                for j in i + 1..num_paths {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Amplitude-blind baseline: a uniformly random L-subset of positions.
///
/// The score is left at 0; fill it from an observation with
/// [`score_positions`] when needed.
pub fn random_baseline<R: Rng + ?Sized>(
    num_positions: usize,
    num_paths: usize,
    rng: &mut R,
) -> Result<SyncEstimate> {
    if num_paths > num_positions {
        return Err(Error::domain(format!(
            "cannot select {num_paths} positions from {num_positions}"
        )));
    }
    Ok(SyncEstimate::new(
        uniform_subset(num_positions, num_paths, rng),
        0.0,
    ))
}

/// Per-trial outcome: capture counts plus the ordered-statistic events the
/// asymptotic analysis tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialResult {
    /// Number of true path delays in the detector's selection.
    pub capture_count: usize,
    /// No true path was selected.
    pub zero_capture: bool,
    /// At least one true path was missed.
    pub any_miss: bool,
    /// The L-th largest noise-position sample exceeds the largest
    /// signal-position sample (false when fewer than L noise positions
    /// exist).
    pub event_sl_gt_b1: bool,
    /// The largest noise-position sample exceeds the smallest
    /// signal-position sample (false when no noise positions exist).
    pub event_s1_gt_bl: bool,
}

/// Score an estimate against the observation's ground truth.
///
/// The two events are computed from the observation and truth only, so they
/// are meaningful for any detector. For the ML detector they coincide (up to
/// zero-probability ties) with `zero_capture` and `any_miss`.
pub fn evaluate_trial(obs: &Observation, est: &SyncEstimate) -> Result<TrialResult> {
    let truth = obs
        .truth()
        .ok_or_else(|| Error::domain("observation carries no ground truth".to_string()))?;
    let m = obs.len();
    if est.positions().iter().any(|&p| p >= m) {
        return Err(Error::domain(
            "estimate positions exceed the observation length".to_string(),
        ));
    }

    let delays = truth.delays();
    let l = delays.len();
    let samples = obs.samples();

    // Sorted-list intersection.
    let mut capture_count = 0usize;
    {
        let (mut i, mut j) = (0usize, 0usize);
        let positions = est.positions();
        while i < positions.len() && j < l {
            match positions[i].cmp(&delays[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    capture_count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
    }

    // Signal-side extremes B_1 (max) and B_L (min).
    let mut b1 = f64::NEG_INFINITY;
    let mut bl = f64::INFINITY;
    for &d in delays {
        b1 = b1.max(samples[d]);
        bl = bl.min(samples[d]);
    }

    // Noise-side order statistics S_1 and S_L.
    let num_noise = m - l;
    let (event_s1_gt_bl, event_sl_gt_b1) = if num_noise == 0 {
        (false, false)
    } else {
        let mut noise: Vec<f64> = Vec::with_capacity(num_noise);
        let mut next_delay = 0usize;
        for (i, &s) in samples.iter().enumerate() {
            if next_delay < l && delays[next_delay] == i {
                next_delay += 1;
            } else {
                noise.push(s);
            }
        }
        let s1 = noise.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let sl_event = if num_noise >= l {
            let (_, &mut sl, _) = noise.select_nth_unstable_by(l - 1, |a, b| b.total_cmp(a));
            sl > b1
        } else {
            false
        };
        (s1 > bl, sl_event)
    };

    Ok(TrialResult {
        capture_count,
        zero_capture: capture_count == 0,
        any_miss: capture_count < l,
        event_sl_gt_b1,
        event_s1_gt_bl,
    })
}
