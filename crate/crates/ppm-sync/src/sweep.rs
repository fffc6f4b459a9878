//! Monte Carlo sweep harness: configuration, deterministic parallel
//! execution, aggregation with confidence intervals, and CSV/JSON export.
//!
//! Every trial runs on its own counter-derived random stream (see
//! [`crate::seeding`]), and per-point aggregation sums integer counters
//! only, so a sweep's result — including the exported bytes — is a pure
//! function of its configuration, independent of worker count and
//! scheduling.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{sample_channel, synthesize_observation};
use crate::detect::{evaluate_trial, ml_synchronize, random_baseline};
use crate::error::{Error, Result};
use crate::order_stats::dominance_report;
use crate::params::{expand_regime, to_canonical, CanonicalParams, PhysicalParams, RegimeSpec};
use crate::seeding;
use crate::stats::{wilson, RateEstimate};

/// Detectors the harness can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Detector {
    /// Maximum-likelihood top-L selection.
    Ml,
    /// Amplitude-blind uniform selection.
    Random,
}

impl std::fmt::Display for Detector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Detector::Ml => "ml",
            Detector::Random => "random",
        })
    }
}

/// Export formats for sweep results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::field(
                "output_format",
                format!("expected \"csv\" or \"json\", got {other:?}"),
            )),
        }
    }
}

/// Worker count: a fixed thread count or "auto" (one per logical CPU).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WorkerCount {
    #[default]
    Auto,
    Fixed(usize),
}

impl Serialize for WorkerCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            WorkerCount::Auto => s.serialize_str("auto"),
            WorkerCount::Fixed(n) => s.serialize_u64(*n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for WorkerCount {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(0) => Err(serde::de::Error::custom("worker_count must be at least 1")),
            Raw::Num(n) => Ok(WorkerCount::Fixed(n as usize)),
            Raw::Text(s) if s == "auto" => Ok(WorkerCount::Auto),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "worker_count: expected a positive integer or \"auto\", got {s:?}"
            ))),
        }
    }
}

/// Parameterization mode of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Canonical,
    Physical,
}

/// One explicit canonical sweep point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub m: usize,
    pub l: usize,
    pub k: f64,
}

/// Regime section of a sweep configuration: L = ceil(M^a) along the ladder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimeConfig {
    /// Growth exponent a in (0, 1].
    pub a: f64,
    /// Ladder of M values; defaults to {2^10, 2^14, 2^18, 2^22}.
    #[serde(default = "default_ladder")]
    pub ladder: Vec<usize>,
    /// SNR scale k.
    pub k: f64,
}

/// Physical section of a sweep configuration: one sweep point per path
/// count, all sharing the same physical parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalConfig {
    pub bandwidth: f64,
    pub symbol_time: f64,
    pub delay_spread: f64,
    pub symbol_energy: f64,
    pub flash_theta: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    /// Path counts L, one sweep point each.
    pub paths: Vec<usize>,
}

impl PhysicalConfig {
    fn params(&self) -> PhysicalParams {
        PhysicalParams {
            bandwidth: self.bandwidth,
            symbol_time: self.symbol_time,
            delay_spread: self.delay_spread,
            symbol_energy: self.symbol_energy,
            flash_theta: self.flash_theta,
            k1: self.k1,
            k2: self.k2,
            k3: self.k3,
        }
    }
}

fn default_ladder() -> Vec<usize> {
    vec![1 << 10, 1 << 14, 1 << 18, 1 << 22]
}

fn default_trials() -> usize {
    2000
}

fn default_detectors() -> Vec<Detector> {
    vec![Detector::Ml, Detector::Random]
}

fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

/// Full sweep configuration. Parses from flat TOML; unknown keys are
/// rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub mode: Mode,
    /// Regime-driven points (canonical mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regime: Option<RegimeConfig>,
    /// Explicit (M, L, k) points (canonical mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointSpec>>,
    /// Physical parameterization (physical mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physical: Option<PhysicalConfig>,
    /// Monte Carlo trials per sweep point.
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// Master seed; every point and trial stream derives from it.
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub worker_count: WorkerCount,
    #[serde(default = "default_detectors")]
    pub detectors: Vec<Detector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub output_format: OutputFormat,
}

impl SweepConfig {
    /// Parse a TOML configuration string.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| {
            // Collapse the parser's multi-line span rendering; errors must
            // stay single-line for the CLI contract.
            let msg: Vec<&str> = e.message().split_whitespace().collect();
            Error::Format(format!("config: {}", msg.join(" ")))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Load and parse a TOML configuration file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    /// Check the configuration invariants without running anything.
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::field("trials", "must be at least 1"));
        }
        if self.detectors.is_empty() {
            return Err(Error::field("detectors", "need at least one detector"));
        }
        match self.mode {
            Mode::Canonical => {
                if self.physical.is_some() {
                    return Err(Error::field("physical", "not allowed in canonical mode"));
                }
                match (&self.regime, &self.points) {
                    (Some(_), Some(_)) => {
                        return Err(Error::field(
                            "points",
                            "specify either a regime or explicit points, not both",
                        ))
                    }
                    (None, None) => {
                        return Err(Error::field(
                            "regime",
                            "canonical mode needs a regime or explicit points",
                        ))
                    }
                    (None, Some(points)) if points.is_empty() => {
                        return Err(Error::field("points", "need at least one sweep point"))
                    }
                    _ => {}
                }
            }
            Mode::Physical => {
                if self.regime.is_some() || self.points.is_some() {
                    return Err(Error::field(
                        "mode",
                        "physical mode takes its points from the [physical] section",
                    ));
                }
                match &self.physical {
                    None => {
                        return Err(Error::field(
                            "physical",
                            "physical mode needs a [physical] section",
                        ))
                    }
                    Some(p) if p.paths.is_empty() => {
                        return Err(Error::field("physical.paths", "need at least one L"))
                    }
                    _ => {}
                }
            }
        }
        self.resolve_points().map(|_| ())
    }

    /// Expand the configuration into canonical sweep points, in order.
    pub fn resolve_points(&self) -> Result<Vec<CanonicalParams>> {
        match self.mode {
            Mode::Canonical => {
                if let Some(regime) = &self.regime {
                    expand_regime(&RegimeSpec {
                        exponent: regime.a,
                        ladder: regime.ladder.clone(),
                        snr_scale: regime.k,
                    })
                } else {
                    self.points
                        .as_ref()
                        .map(|points| {
                            points
                                .iter()
                                .map(|p| CanonicalParams::new(p.m, p.l, p.k))
                                .collect()
                        })
                        .unwrap_or_else(|| {
                            Err(Error::field("points", "no sweep points configured"))
                        })
                }
            }
            Mode::Physical => {
                let phys = self
                    .physical
                    .as_ref()
                    .ok_or_else(|| Error::field("physical", "missing [physical] section"))?;
                let params = phys.params();
                phys.paths
                    .iter()
                    .map(|&l| to_canonical(&params, l))
                    .collect()
            }
        }
    }
}

/// Analytic companion fields for one sweep point, from the dominance
/// analysis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticStats {
    /// E[S_L − B₁].
    pub mean_d: f64,
    /// var[S_L − B₁].
    pub var_d: f64,
    /// Chebyshev lower bound on the zero-capture probability, when E[D] > 0.
    pub chebyshev_bound: Option<f64>,
}

/// Aggregated Monte Carlo estimates for one detector at one sweep point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectorStats {
    pub detector: Detector,
    /// Rate of trials capturing no true path.
    pub zero_capture: RateEstimate,
    /// Rate of trials missing at least one true path.
    pub miss: RateEstimate,
    /// Captured paths over total paths (interval treats paths as Bernoulli
    /// pseudo-trials).
    pub capture_fraction: RateEstimate,
    /// Standard error of the per-trial capture fraction mean.
    pub capture_fraction_se: f64,
}

/// Results for one sweep point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub num_positions: usize,
    pub num_paths: usize,
    pub snr_scale: f64,
    pub amplitude: f64,
    pub trials: usize,
    /// Seed this point's trial streams derive from.
    pub seed_base: u64,
    /// Dominance analysis, when the point is inside its domain.
    pub analytic: Option<AnalyticStats>,
    pub detectors: Vec<DetectorStats>,
}

/// Results for a whole sweep, point order as configured.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub points: Vec<PointResult>,
}

impl SweepResult {
    /// Stats for `detector` at point index `i`, if present.
    pub fn detector_stats(&self, i: usize, detector: Detector) -> Option<&DetectorStats> {
        self.points
            .get(i)?
            .detectors
            .iter()
            .find(|d| d.detector == detector)
    }
}

#[derive(Clone, Copy, Default)]
struct Counts {
    zero: u64,
    miss: u64,
    captured: u64,
    captured_sq: u128,
}

impl Counts {
    fn record(&mut self, capture_count: usize, num_paths: usize) {
        if capture_count == 0 {
            self.zero += 1;
        }
        if capture_count < num_paths {
            self.miss += 1;
        }
        self.captured += capture_count as u64;
        self.captured_sq += (capture_count as u128) * (capture_count as u128);
    }

    fn merge(mut self, other: Counts) -> Counts {
        self.zero += other.zero;
        self.miss += other.miss;
        self.captured += other.captured;
        self.captured_sq += other.captured_sq;
        self
    }
}

#[derive(Clone, Copy, Default)]
struct TrialAccum {
    ml: Counts,
    random: Counts,
}

impl TrialAccum {
    fn merge(self, other: TrialAccum) -> TrialAccum {
        TrialAccum {
            ml: self.ml.merge(other.ml),
            random: self.random.merge(other.random),
        }
    }
}

fn detector_stats(detector: Detector, counts: &Counts, trials: usize, l: usize) -> DetectorStats {
    let n = trials as u64;
    let total_paths = n * l as u64;
    // Per-trial capture-fraction moments from the integer sums.
    let nf = trials as f64;
    let mean_count = counts.captured as f64 / nf;
    let mean_sq = counts.captured_sq as f64 / nf;
    let var_count = (mean_sq - mean_count * mean_count).max(0.0);
    let se = if trials > 1 {
        (var_count / (nf - 1.0)).sqrt() / l as f64
    } else {
        0.0
    };
    DetectorStats {
        detector,
        zero_capture: wilson(counts.zero, n),
        miss: wilson(counts.miss, n),
        capture_fraction: wilson(counts.captured, total_paths),
        capture_fraction_se: se,
    }
}

/// Run `trials` independent trials at one canonical point and aggregate.
///
/// Trial `t` draws from the stream derived from `(seed_base, t)`; trials run
/// in parallel and aggregate by commutative integer sums, so the result does
/// not depend on scheduling. `noise_enabled = false` is a test hook that
/// synthesizes noiseless observations.
pub fn run_point(
    c: &CanonicalParams,
    trials: usize,
    seed_base: u64,
    detectors: &[Detector],
    noise_enabled: bool,
) -> Result<PointResult> {
    if trials < 1 {
        return Err(Error::field("trials", "must be at least 1"));
    }
    if detectors.is_empty() {
        return Err(Error::field("detectors", "need at least one detector"));
    }
    let run_ml = detectors.contains(&Detector::Ml);
    let run_random = detectors.contains(&Detector::Random);
    let l = c.num_paths;
    let m = c.num_positions;

    let accum = (0..trials as u64)
        .into_par_iter()
        .try_fold(TrialAccum::default, |mut acc, t| -> Result<TrialAccum> {
            let mut rng = seeding::stream(seeding::derive_seed(seed_base, t));
            let channel = sample_channel(c, &mut rng)?;
            let obs = synthesize_observation(&channel, c, &mut rng, noise_enabled)?;
            if run_ml {
                let est = ml_synchronize(&obs, l)?;
                let trial = evaluate_trial(&obs, &est)?;
                acc.ml.record(trial.capture_count, l);
            }
            if run_random {
                let est = random_baseline(m, l, &mut rng)?.scored_against(&obs);
                let trial = evaluate_trial(&obs, &est)?;
                acc.random.record(trial.capture_count, l);
            }
            Ok(acc)
        })
        .try_reduce(TrialAccum::default, |a, b| Ok(a.merge(b)))?;

    let mut stats = Vec::new();
    if run_ml {
        stats.push(detector_stats(Detector::Ml, &accum.ml, trials, l));
    }
    if run_random {
        stats.push(detector_stats(Detector::Random, &accum.random, trials, l));
    }

    Ok(PointResult {
        num_positions: m,
        num_paths: l,
        snr_scale: c.snr_scale,
        amplitude: c.amplitude(),
        trials,
        seed_base,
        analytic: dominance_report(c).ok().map(|r| AnalyticStats {
            mean_d: r.mean_d,
            var_d: r.var_d,
            chebyshev_bound: r.chebyshev_lower_bound,
        }),
        detectors: stats,
    })
}

/// Run a full sweep: every configured point, in order, with noise enabled.
///
/// The result is a pure function of the configuration (including
/// `master_seed`), independent of `worker_count`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let points = cfg.resolve_points()?;

    let run_all = || -> Result<Vec<PointResult>> {
        points
            .iter()
            .enumerate()
            .map(|(i, c)| {
                run_point(
                    c,
                    cfg.trials,
                    seeding::derive_seed(cfg.master_seed, i as u64),
                    &cfg.detectors,
                    true,
                )
            })
            .collect()
    };

    let points = match cfg.worker_count {
        WorkerCount::Auto => run_all()?,
        WorkerCount::Fixed(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::domain(format!("worker pool: {e}")))?
            .install(run_all)?,
    };

    Ok(SweepResult { points })
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

const CSV_HEADER: &str = "M,L,k,A,trials,detector,zero_capture_rate,zero_capture_lo,\
zero_capture_hi,miss_rate,miss_lo,miss_hi,capture_fraction,capture_lo,capture_hi,\
mean_D,var_D,chebyshev_bound,seed_base";

/// Fixed-precision float field: scientific notation with 7 significant
/// digits.
fn field(x: f64) -> String {
    format!("{x:.6e}")
}

fn optional_field(x: Option<f64>) -> String {
    x.map(field).unwrap_or_else(|| "na".to_string())
}

/// Render a sweep result as CSV: one row per (point, detector), header
/// always present, rows newline-terminated.
pub fn write_csv<W: Write>(result: &SweepResult, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in &result.points {
        for d in &p.detectors {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                p.num_positions,
                p.num_paths,
                field(p.snr_scale),
                field(p.amplitude),
                p.trials,
                d.detector,
                field(d.zero_capture.rate),
                field(d.zero_capture.lo),
                field(d.zero_capture.hi),
                field(d.miss.rate),
                field(d.miss.lo),
                field(d.miss.hi),
                field(d.capture_fraction.rate),
                field(d.capture_fraction.lo),
                field(d.capture_fraction.hi),
                optional_field(p.analytic.map(|a| a.mean_d)),
                optional_field(p.analytic.map(|a| a.var_d)),
                optional_field(p.analytic.and_then(|a| a.chebyshev_bound)),
                p.seed_base,
            )?;
        }
    }
    Ok(())
}

/// Serialize a sweep result to a writer in the requested format.
pub fn write_results<W: Write>(
    result: &SweepResult,
    format: OutputFormat,
    out: &mut W,
) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(result, out).map_err(|e| Error::Format(format!("csv: {e}"))),
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, result)
                .map_err(|e| Error::Format(format!("json: {e}")))?;
            out.write_all(b"\n")
                .map_err(|e| Error::Format(format!("json: {e}")))
        }
    }
}

/// Export a sweep result to a file.
pub fn export_results(result: &SweepResult, path: &Path, format: OutputFormat) -> Result<()> {
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    write_results(result, format, &mut writer)?;
    writer.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Re-read a JSON export.
pub fn read_json(path: &Path) -> Result<SweepResult> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_reader(std::io::BufReader::new(file))
        .map_err(|e| Error::Format(format!("json: {e}")))
}
