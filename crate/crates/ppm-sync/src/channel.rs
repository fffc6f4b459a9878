//! Channel realizations and discrete-time observation synthesis.
//!
//! A channel draw is a uniformly random L-subset of the M delay positions
//! with equal gains 1/sqrt(L). With the PPM symbols known and the
//! per-coherence-period summation folded in, the received statistic is a
//! single length-M vector: amplitude A at path positions plus unit-variance
//! Gaussian noise everywhere.

use std::collections::HashMap;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::CanonicalParams;

/// One multipath realization: L distinct delay positions and their gains.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelRealization {
    delays: Vec<usize>,
    gains: Vec<f64>,
}

impl ChannelRealization {
    /// Build a realization from explicit delays (each in [0, M-1]); gains are
    /// the uniform profile 1/sqrt(L).
    pub fn new(mut delays: Vec<usize>, num_positions: usize) -> Result<Self> {
        if delays.is_empty() {
            return Err(Error::field("delays", "need at least one path"));
        }
        delays.sort_unstable();
        if delays.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::field("delays", "path delays must be distinct"));
        }
        if *delays.last().unwrap() >= num_positions {
            return Err(Error::field(
                "delays",
                format!("delays must lie in [0, {})", num_positions),
            ));
        }
        let gain = 1.0 / (delays.len() as f64).sqrt();
        let gains = vec![gain; delays.len()];
        Ok(Self { delays, gains })
    }

    /// Path delays, sorted ascending.
    pub fn delays(&self) -> &[usize] {
        &self.delays
    }

    /// Per-path gains (uniform profile).
    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    /// Number of paths L.
    pub fn num_paths(&self) -> usize {
        self.delays.len()
    }

    /// True when `position` carries a path.
    pub fn contains(&self, position: usize) -> bool {
        self.delays.binary_search(&position).is_ok()
    }
}

/// Draw a uniformly random `amount`-subset of {0, .., population-1}.
///
/// Partial Fisher-Yates over a sparse swap table: O(amount) time and memory,
/// exactly uniform over all C(population, amount) subsets.
pub(crate) fn uniform_subset<R: Rng + ?Sized>(
    population: usize,
    amount: usize,
    rng: &mut R,
) -> Vec<usize> {
    debug_assert!(amount <= population);
    let mut swapped: HashMap<usize, usize> = HashMap::with_capacity(amount);
    let mut out = Vec::with_capacity(amount);
    for i in 0..amount {
        let j = rng.random_range(i..population);
        let value_at_j = swapped.get(&j).copied().unwrap_or(j);
        let value_at_i = swapped.get(&i).copied().unwrap_or(i);
        out.push(value_at_j);
        swapped.insert(j, value_at_i);
    }
    out
}

/// Sample a channel realization: delays uniform over all C(M, L) subsets,
/// gains 1/sqrt(L).
pub fn sample_channel<R: Rng + ?Sized>(
    c: &CanonicalParams,
    rng: &mut R,
) -> Result<ChannelRealization> {
    if c.num_paths > c.num_positions {
        return Err(Error::domain(format!(
            "cannot place {} paths in {} positions",
            c.num_paths, c.num_positions
        )));
    }
    let delays = uniform_subset(c.num_positions, c.num_paths, rng);
    ChannelRealization::new(delays, c.num_positions)
}

/// The length-M vector of received matched-filter samples.
///
/// When produced by [`synthesize_observation`] the generating channel is
/// retained so trials can be scored against the truth.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    samples: Vec<f64>,
    truth: Option<ChannelRealization>,
}

impl Observation {
    /// Wrap raw samples with no ground truth attached (detector-only use).
    pub fn from_samples(samples: Vec<f64>) -> Self {
        Self {
            samples,
            truth: None,
        }
    }

    /// Received samples Y_0 .. Y_{M-1}.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// The generating channel, when known.
    pub fn truth(&self) -> Option<&ChannelRealization> {
        self.truth.as_ref()
    }

    /// Number of delay positions M.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Synthesize the discrete-time observation for one channel draw:
/// `samples[i] = A·1{i is a path} + Z_i` with A = sqrt(k·ln(M)/L) and Z_i
/// i.i.d. standard normal.
///
/// `noise_enabled = false` zeroes the noise (test hook); the signal part is
/// unchanged.
pub fn synthesize_observation<R: Rng + ?Sized>(
    channel: &ChannelRealization,
    c: &CanonicalParams,
    rng: &mut R,
    noise_enabled: bool,
) -> Result<Observation> {
    if channel.num_paths() != c.num_paths {
        return Err(Error::domain(format!(
            "channel has {} paths but parameters expect {}",
            channel.num_paths(),
            c.num_paths
        )));
    }
    if *channel.delays().last().unwrap() >= c.num_positions {
        return Err(Error::domain(
            "channel delays exceed the observation length".to_string(),
        ));
    }

    let m = c.num_positions;
    let amplitude = c.amplitude();
    let mut samples = if noise_enabled {
        let mut v = Vec::with_capacity(m);
        for _ in 0..m {
            v.push(rng.sample::<f64, _>(StandardNormal));
        }
        v
    } else {
        vec![0.0; m]
    };
    for &d in channel.delays() {
        samples[d] += amplitude;
    }

    Ok(Observation {
        samples,
        truth: Some(channel.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn full_subset_is_everything() {
        let c = CanonicalParams::new(4, 4, 1.0).unwrap();
        let mut r = rng(1);
        for _ in 0..50 {
            let ch = sample_channel(&c, &mut r).unwrap();
            assert_eq!(ch.delays(), &[0, 1, 2, 3]);
        }
    }

    #[test]
    fn gains_are_uniform_profile() {
        let c = CanonicalParams::new(64, 9, 1.0).unwrap();
        let ch = sample_channel(&c, &mut rng(2)).unwrap();
        let sum_sq: f64 = ch.gains().iter().map(|g| g * g).sum();
        assert!((sum_sq - 1.0).abs() < 1e-12);
        for &g in ch.gains() {
            assert!((g - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_path_of_two_is_unbiased() {
        // L = 1, M = 2: each of {0}, {1} with frequency 0.5 +- 3*sqrt(0.25/n).
        let c = CanonicalParams::new(2, 1, 1.0).unwrap();
        let mut r = rng(3);
        let n = 100_000;
        let mut count0 = 0usize;
        for _ in 0..n {
            if sample_channel(&c, &mut r).unwrap().delays()[0] == 0 {
                count0 += 1;
            }
        }
        let freq = count0 as f64 / n as f64;
        let tol = 3.0 * (0.25 / n as f64).sqrt();
        assert!((freq - 0.5).abs() < tol, "freq = {freq}");
    }

    #[test]
    fn subsets_of_four_are_uniform() {
        // L = 2, M = 4: all C(4,2) = 6 subsets equally likely; chi-square test
        // at the 0.001 level.
        let c = CanonicalParams::new(4, 2, 1.0).unwrap();
        let mut r = rng(4);
        let n = 100_000;
        let mut counts = HashMap::new();
        for _ in 0..n {
            let ch = sample_channel(&c, &mut r).unwrap();
            *counts
                .entry((ch.delays()[0], ch.delays()[1]))
                .or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        let expected = n as f64 / 6.0;
        let chi2: f64 = counts
            .values()
            .map(|&obs| {
                let d = obs as f64 - expected;
                d * d / expected
            })
            .sum();
        let critical = ChiSquared::new(5.0).unwrap().inverse_cdf(0.999);
        assert!(chi2 < critical, "chi2 = {chi2}, critical = {critical}");
    }

    #[test]
    fn noiseless_synthesis_is_scaled_indicator() {
        // M = 4, delays {1,3}, A = 2 -> samples [0, 2, 0, 2].
        let k = 8.0 / (4.0_f64).ln(); // makes k*ln(4)/2 = 4, A = 2
        let c = CanonicalParams::new(4, 2, k).unwrap();
        let ch = ChannelRealization::new(vec![1, 3], 4).unwrap();
        let obs = synthesize_observation(&ch, &c, &mut rng(5), false).unwrap();
        let expect = [0.0, 2.0, 0.0, 2.0];
        for (s, e) in obs.samples().iter().zip(expect) {
            assert!((s - e).abs() < 1e-12, "{:?}", obs.samples());
        }
    }

    #[test]
    fn signal_position_mean_is_amplitude() {
        let c = CanonicalParams::new(8, 2, 3.0).unwrap();
        let ch = ChannelRealization::new(vec![2, 5], 8).unwrap();
        let a = c.amplitude();
        let n = 100_000;
        let mut r = rng(6);
        let mut sum = 0.0;
        for _ in 0..n {
            let obs = synthesize_observation(&ch, &c, &mut r, true).unwrap();
            sum += obs.samples()[5];
        }
        let mean = sum / n as f64;
        let tol = 3.0 / (n as f64).sqrt();
        assert!((mean - a).abs() < tol, "mean = {mean}, A = {a}");
    }

    #[test]
    fn noise_position_has_unit_variance() {
        let c = CanonicalParams::new(8, 2, 3.0).unwrap();
        let ch = ChannelRealization::new(vec![2, 5], 8).unwrap();
        let n = 100_000;
        let mut r = rng(7);
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for _ in 0..n {
            let z = synthesize_observation(&ch, &c, &mut r, true)
                .unwrap()
                .samples()[0];
            sum += z;
            sum_sq += z * z;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        assert!((var - 1.0).abs() < 0.02, "var = {var}");
    }

    #[test]
    fn observation_length_is_m() {
        for (m, l) in [(2, 1), (16, 3), (100, 100)] {
            let c = CanonicalParams::new(m, l, 1.0).unwrap();
            let mut r = rng(8);
            let ch = sample_channel(&c, &mut r).unwrap();
            let obs = synthesize_observation(&ch, &c, &mut r, true).unwrap();
            assert_eq!(obs.len(), m);
        }
    }

    #[test]
    fn sampling_is_deterministic_per_stream() {
        let c = CanonicalParams::new(1000, 30, 2.0).unwrap();
        let draw = |seed| {
            let mut r = rng(seed);
            let ch = sample_channel(&c, &mut r).unwrap();
            let obs = synthesize_observation(&ch, &c, &mut r, true).unwrap();
            (ch, obs)
        };
        let (ch1, obs1) = draw(42);
        let (ch2, obs2) = draw(42);
        assert_eq!(ch1, ch2);
        assert_eq!(obs1, obs2);
        let (ch3, _) = draw(43);
        assert_ne!(ch1, ch3);
    }

    #[test]
    fn mismatched_channel_is_rejected() {
        let c = CanonicalParams::new(8, 3, 1.0).unwrap();
        let ch = ChannelRealization::new(vec![0, 1], 8).unwrap();
        assert!(synthesize_observation(&ch, &c, &mut rng(9), true).is_err());
    }

    #[test]
    fn realization_validation() {
        assert!(ChannelRealization::new(vec![], 4).is_err());
        assert!(ChannelRealization::new(vec![1, 1], 4).is_err());
        assert!(ChannelRealization::new(vec![4], 4).is_err());
        let ch = ChannelRealization::new(vec![3, 0], 4).unwrap();
        assert_eq!(ch.delays(), &[0, 3]); // sorted on construction
        assert!(ch.contains(3) && !ch.contains(1));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn noiseless_energy_identity(
                m in 2_usize..200,
                l_frac in 0.0_f64..1.0,
                k in 0.1_f64..10.0,
                seed in 0_u64..1000,
            ) {
                let l = (1 + (l_frac * (m - 1) as f64) as usize).min(m);
                let c = CanonicalParams::new(m, l, k).unwrap();
                let mut r = rng(seed);
                let ch = sample_channel(&c, &mut r).unwrap();
                let obs = synthesize_observation(&ch, &c, &mut r, false).unwrap();
                let energy: f64 = obs.samples().iter().map(|s| s * s).sum();
                let expect = k * (m as f64).ln();
                prop_assert!((energy - expect).abs() < 1e-9,
                    "energy {} vs {}", energy, expect);
            }

            #[test]
            fn sampled_delays_are_valid(
                m in 1_usize..300,
                l_frac in 0.0_f64..1.0,
                seed in 0_u64..1000,
            ) {
                let m = m.max(2);
                let l = (1 + (l_frac * (m - 1) as f64) as usize).min(m);
                let c = CanonicalParams::new(m, l, 1.0).unwrap();
                let ch = sample_channel(&c, &mut rng(seed)).unwrap();
                prop_assert_eq!(ch.num_paths(), l);
                prop_assert!(ch.delays().windows(2).all(|w| w[0] < w[1]));
                prop_assert!(*ch.delays().last().unwrap() < m);
            }
        }
    }
}
