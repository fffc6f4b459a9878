//! System parameterizations and the mapping between them.
//!
//! Two equivalent views of the same system are supported:
//!
//! * [`PhysicalParams`] — bandwidth, symbol time, delay spread, per-symbol
//!   energy, and the flash parameter θ, in physical units.
//! * [`CanonicalParams`] — the triple (M, L, k) in which the asymptotic
//!   analysis is phrased: M resolvable delay positions, L propagation paths,
//!   and an SNR scale k such that the per-path amplitude is
//!   `sqrt(k·ln(M)/L)`.
//!
//! Natural logarithms are used throughout; a different base only rescales k.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical-layer parameters of the flash-PPM system.
///
/// Energies are expressed after noise normalization, so the receiver noise
/// has unit variance per sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Transmission bandwidth W in Hz.
    pub bandwidth: f64,
    /// Symbol duration T_s in seconds.
    pub symbol_time: f64,
    /// Channel delay spread T_d in seconds.
    pub delay_spread: f64,
    /// Average transmitted energy per symbol (noise-normalized).
    pub symbol_energy: f64,
    /// Flash parameter θ: the fraction of coherence periods used for
    /// transmission, in (0, 1].
    pub flash_theta: f64,
    /// Data-rate constant k₁ in the flash floor θ ≥ k₁/ln(W·k₂).
    pub k1: f64,
    /// Bandwidth-scaling constant k₂ in the flash floor.
    pub k2: f64,
    /// Constant k₃ of the acquisition feasibility condition.
    pub k3: f64,
}

impl PhysicalParams {
    /// Number of pulse positions per symbol, N = round(W·T_s).
    pub fn num_pulse_positions(&self) -> u64 {
        (self.bandwidth * self.symbol_time).round() as u64
    }

    /// Number of resolvable delay positions, M = round(W·T_d).
    pub fn num_delay_positions(&self) -> u64 {
        (self.bandwidth * self.delay_spread).round() as u64
    }

    /// Lower bound on θ required for a non-diminishing data rate:
    /// k₁ / ln(W·k₂).
    pub fn flash_floor(&self) -> f64 {
        self.k1 / (self.bandwidth * self.k2).ln()
    }

    /// Per-path signal amplitude sqrt(𝓔/(θ·L)) for a channel with
    /// `num_paths` equal-gain paths.
    pub fn amplitude(&self, num_paths: usize) -> f64 {
        (self.symbol_energy / (self.flash_theta * num_paths as f64)).sqrt()
    }
}

/// Outcome of one validation check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    /// Name of the validated invariant.
    pub name: &'static str,
    pub passed: bool,
    /// Human-readable explanation, including computed bounds on failure.
    pub detail: String,
}

/// Per-invariant pass/fail results for a [`PhysicalParams`] instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// The computed flash floor k₁/ln(W·k₂).
    pub flash_floor: f64,
}

impl ValidationReport {
    /// True when every check passed.
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }
}

/// Validate a physical parameter set.
///
/// Out-of-domain fields (non-positive values, θ outside (0, 1]) are rejected
/// with a named-field error. Structural invariants — at least one pulse and
/// delay position, and the flash floor θ ≥ k₁/ln(W·k₂) — are reported
/// per-check in the returned [`ValidationReport`].
pub fn validate_physical(p: &PhysicalParams) -> Result<ValidationReport> {
    let positive = [
        ("bandwidth", p.bandwidth),
        ("symbol_time", p.symbol_time),
        ("delay_spread", p.delay_spread),
        ("symbol_energy", p.symbol_energy),
        ("k1", p.k1),
        ("k2", p.k2),
        ("k3", p.k3),
    ];
    for (name, value) in positive {
        if value <= 0.0 || !value.is_finite() {
            return Err(Error::field(name, format!("must be positive, got {value}")));
        }
    }
    if p.flash_theta <= 0.0 || p.flash_theta > 1.0 || p.flash_theta.is_nan() {
        return Err(Error::field(
            "flash_theta",
            format!("must be in (0,1], got {}", p.flash_theta),
        ));
    }

    let n = p.num_pulse_positions();
    let m = p.num_delay_positions();
    let floor = p.flash_floor();

    let checks = vec![
        Check {
            name: "pulse_positions",
            passed: n >= 1,
            detail: format!("N = round(W*T_s) = {n}, requires N >= 1"),
        },
        Check {
            name: "delay_positions",
            passed: m >= 1,
            detail: format!("M = round(W*T_d) = {m}, requires M >= 1"),
        },
        Check {
            name: "flash_floor",
            passed: p.flash_theta >= floor,
            detail: format!(
                "theta = {} versus floor k1/ln(W*k2) = {floor}",
                p.flash_theta
            ),
        },
    ];

    Ok(ValidationReport {
        checks,
        flash_floor: floor,
    })
}

/// Canonical (M, L, k) parameterization.
///
/// The per-path amplitude is `A = sqrt(k·ln(M)/L)`; noise variance is fixed
/// at 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalParams {
    /// Number of resolvable delay positions M.
    pub num_positions: usize,
    /// Number of propagation paths L, with 1 ≤ L ≤ M.
    pub num_paths: usize,
    /// SNR scale k, independent of M and L.
    pub snr_scale: f64,
}

impl CanonicalParams {
    /// Build and validate a canonical parameter set.
    ///
    /// Requires M ≥ 2 (so ln M > 0 and the amplitude is positive),
    /// 1 ≤ L ≤ M, and k positive and finite.
    pub fn new(num_positions: usize, num_paths: usize, snr_scale: f64) -> Result<Self> {
        if num_positions < 2 {
            return Err(Error::field(
                "num_positions",
                format!("M must be at least 2, got {num_positions}"),
            ));
        }
        if num_paths < 1 || num_paths > num_positions {
            return Err(Error::field(
                "num_paths",
                format!("L must satisfy 1 <= L <= M = {num_positions}, got {num_paths}"),
            ));
        }
        if snr_scale <= 0.0 || !snr_scale.is_finite() {
            return Err(Error::field(
                "snr_scale",
                format!("k must be positive and finite, got {snr_scale}"),
            ));
        }
        Ok(Self {
            num_positions,
            num_paths,
            snr_scale,
        })
    }

    /// Per-path signal amplitude A = sqrt(k·ln(M)/L).
    pub fn amplitude(&self) -> f64 {
        (self.snr_scale * (self.num_positions as f64).ln() / self.num_paths as f64).sqrt()
    }
}

/// Map a physical parameter set to canonical form for an `num_paths`-path
/// channel.
///
/// M is taken from the delay spread (M = round(W·T_d)); the path count is an
/// experiment input rather than a propagation-derived quantity; and k is
/// chosen so both parameterizations give the same amplitude:
/// sqrt(k·ln(M)/L) = sqrt(𝓔/(θ·L)), i.e. k = 𝓔/(θ·ln M).
pub fn to_canonical(p: &PhysicalParams, num_paths: usize) -> Result<CanonicalParams> {
    let report = validate_physical(p)?;
    if !report.is_valid() {
        return Err(Error::domain(format!(
            "physical parameters fail validation: {}",
            report.failures().join(", ")
        )));
    }
    let m = p.num_delay_positions() as usize;
    if m < 2 {
        return Err(Error::domain(format!(
            "M = round(W*T_d) = {m} is degenerate: need M >= 2 for a positive ln M"
        )));
    }
    let k = p.symbol_energy / (p.flash_theta * (m as f64).ln());
    CanonicalParams::new(m, num_paths, k)
}

/// A growth-regime specification: L = ceil(M^a) along a ladder of M values.
///
/// The exponent a selects the regime of interest: a < 1/2 gives
/// L/sqrt(M) → 0, while a in [1/2, 1) gives L/M → 0 with L²/M unbounded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeSpec {
    /// Growth exponent a in (0, 1].
    pub exponent: f64,
    /// Strictly increasing ladder of M values.
    pub ladder: Vec<usize>,
    /// SNR scale k shared by every ladder entry.
    pub snr_scale: f64,
}

/// Number of paths for one ladder entry, L = ceil(M^a).
///
/// Values within 1e-9 (relative) of an integer are snapped to it first, so
/// exact powers such as 4096^0.25 = 8 stay exact under floating-point
/// evaluation.
pub fn paths_for(num_positions: usize, exponent: f64) -> usize {
    let v = (num_positions as f64).powf(exponent);
    let nearest = v.round();
    let l = if (v - nearest).abs() <= 1e-9 * v.max(1.0) {
        nearest
    } else {
        v.ceil()
    };
    l as usize
}

/// Expand a regime specification into one canonical parameter set per ladder
/// entry, preserving ladder order.
pub fn expand_regime(spec: &RegimeSpec) -> Result<Vec<CanonicalParams>> {
    if spec.exponent <= 0.0 || spec.exponent > 1.0 || spec.exponent.is_nan() {
        return Err(Error::field(
            "exponent",
            format!("a must be in (0,1], got {}", spec.exponent),
        ));
    }
    if spec.ladder.is_empty() {
        return Err(Error::field("ladder", "must be nonempty"));
    }
    if !spec.ladder.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::field("ladder", "must be strictly increasing"));
    }
    spec.ladder
        .iter()
        .map(|&m| {
            let l = paths_for(m, spec.exponent);
            if l > m {
                return Err(Error::domain(format!(
                    "derived L = ceil({m}^{}) = {l} exceeds M = {m}",
                    spec.exponent
                )));
            }
            CanonicalParams::new(m, l, spec.snr_scale)
        })
        .collect()
}
