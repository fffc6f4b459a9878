//! Gaussian order statistics: asymptotic formulas, an exact quadrature
//! oracle, and the dominance analysis behind the synchronization failure
//! regimes.
//!
//! The asymptotic mean and variance of the ν-th largest of G i.i.d.
//! Gaussians ([`cramer_mean`], [`cramer_var`]) drop their O(1/ln G) and
//! O(1/ln²G) remainders; [`order_stat_oracle`] integrates the exact
//! order-statistic density so the approximation error can always be
//! quantified rather than assumed.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::params::{CanonicalParams, PhysicalParams};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;
const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Partial harmonic sums S₁(ν) = Σ_{j<ν} 1/j and S₂(ν) = Σ_{j<ν} 1/j².
///
/// Both are 0 at ν = 1.
pub fn harmonic_sums(rank: usize) -> Result<(f64, f64)> {
    if rank < 1 {
        return Err(Error::domain("rank must be at least 1".to_string()));
    }
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for j in 1..rank {
        let x = 1.0 / j as f64;
        s1 += x;
        s2 += x * x;
    }
    Ok((s1, s2))
}

/// Query for the ν-th largest of G i.i.d. Gaussian(m, σ²) variables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderStatQuery {
    /// Rank from the top, ν ≥ 1 (ν = 1 is the maximum).
    pub rank: usize,
    /// Population size G ≥ ν.
    pub population: usize,
    /// Population mean m.
    pub mean: f64,
    /// Population standard deviation σ > 0.
    pub std_dev: f64,
}

impl OrderStatQuery {
    pub fn new(rank: usize, population: usize, mean: f64, std_dev: f64) -> Result<Self> {
        if rank < 1 || rank > population {
            return Err(Error::field(
                "rank",
                format!("need 1 <= rank <= population = {population}, got {rank}"),
            ));
        }
        if std_dev <= 0.0 || !std_dev.is_finite() {
            return Err(Error::field(
                "std_dev",
                format!("must be positive and finite, got {std_dev}"),
            ));
        }
        Ok(Self {
            rank,
            population,
            mean,
            std_dev,
        })
    }

    fn check_asymptotic_domain(&self) -> Result<f64> {
        // The expansion needs ln ln G > -inf and a positive leading term;
        // G = 2 sits in the ln G <= 1 regime and is rejected (the exact
        // oracle serves it instead).
        if self.population < 3 {
            return Err(Error::domain(format!(
                "asymptotic order-statistic formulas need G >= 3 (ln G > 1); \
                 got G = {}; use order_stat_oracle for tiny populations",
                self.population
            )));
        }
        Ok((self.population as f64).ln())
    }
}

/// Asymptotic mean of the ν-th largest of G Gaussians:
/// `m + σ·(sqrt(2 ln G) − (ln ln G + ln 4π + 2(S₁(ν) − C)) / (2 sqrt(2 ln G)))`
/// with C Euler's constant; the O(1/ln G) remainder is dropped.
pub fn cramer_mean(q: &OrderStatQuery) -> Result<f64> {
    let ln_g = q.check_asymptotic_domain()?;
    let (s1, _) = harmonic_sums(q.rank)?;
    let leading = (2.0 * ln_g).sqrt();
    let correction = (ln_g.ln() + (4.0 * std::f64::consts::PI).ln() + 2.0 * (s1 - EULER_GAMMA))
        / (2.0 * leading);
    Ok(q.mean + q.std_dev * (leading - correction))
}

/// Asymptotic variance of the ν-th largest of G Gaussians:
/// `σ²/(2 ln G) · (π²/6 − S₂(ν))`; the O(1/ln²G) remainder is dropped.
pub fn cramer_var(q: &OrderStatQuery) -> Result<f64> {
    let ln_g = q.check_asymptotic_domain()?;
    let (_, s2) = harmonic_sums(q.rank)?;
    let pi2_6 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    Ok(q.std_dev * q.std_dev / (2.0 * ln_g) * (pi2_6 - s2))
}

// ---------------------------------------------------------------------------
// Exact oracle: quadrature over the order-statistic density
// ---------------------------------------------------------------------------

fn ln_normal_pdf(x: f64) -> f64 {
    -0.5 * x * x - LN_SQRT_2PI
}

/// Standard normal upper-tail probability Q(x).
fn normal_sf(x: f64) -> f64 {
    0.5 * erfc(x / SQRT_2)
}

/// ln Φ(x), stable in both tails over the quadrature domain.
fn ln_normal_cdf(x: f64) -> f64 {
    if x >= 0.0 {
        (-normal_sf(x)).ln_1p()
    } else {
        let v = 0.5 * erfc(-x / SQRT_2);
        if v > 0.0 {
            v.ln()
        } else {
            f64::NEG_INFINITY
        }
    }
}

/// ln Q(x) = ln(1 − Φ(x)).
fn ln_normal_sf(x: f64) -> f64 {
    ln_normal_cdf(-x)
}

/// ln of the combinatorial prefactor G!/((ν−1)!(G−ν)!), computed as
/// ln C(G, ν−1) + ln(G−ν+1) with a compensated sum over the smaller side of
/// the binomial so the value stays accurate for huge G.
fn ln_prefactor(rank: usize, population: usize) -> f64 {
    let k = (rank - 1).min(population - (rank - 1));
    let mut sum = 0.0;
    let mut comp = 0.0;
    for i in 0..k {
        let term = ((population - i) as f64).ln() - ((i + 1) as f64).ln();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum + ((population - rank + 1) as f64).ln()
}

struct OrderStatDensity {
    ln_coef: f64,
    rank: usize,
    population: usize,
}

impl OrderStatDensity {
    fn eval(&self, x: f64) -> f64 {
        let mut t = self.ln_coef + ln_normal_pdf(x);
        let below = self.population - self.rank;
        if below > 0 {
            t += below as f64 * ln_normal_cdf(x);
        }
        if self.rank > 1 {
            t += (self.rank - 1) as f64 * ln_normal_sf(x);
        }
        t.exp()
    }
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1)
            + adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Adaptive Simpson quadrature of `f` over consecutive panels given by
/// `breaks`, with an absolute tolerance budget split across panels.
fn adaptive_quadrature<F: Fn(f64) -> f64>(f: &F, breaks: &[f64], tol: f64) -> f64 {
    let panel_tol = tol / breaks.len().max(1) as f64;
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = (f(a), f(m), f(b));
        let whole = simpson(fa, fm, fb, b - a);
        total += adapt(f, a, fa, m, fm, b, fb, whole, panel_tol, 48);
    }
    total
}

/// Quadrature panel boundaries for the density of the ν-th largest of G:
/// fine panels across the concentration region around the 1 − ν/(G+1)
/// quantile, coarse panels covering the rest of [−c, c], where the cutoff c
/// keeps the truncated tail mass below ~1e-14·G⁻¹-scale.
fn quadrature_breaks(rank: usize, population: usize) -> Vec<f64> {
    let g = population as f64;
    // exp(-c^2/2) <= 1e-14 / G bounds the per-sample tail, so G samples stay
    // below 1e-14.
    let cutoff = (2.0 * (g / 1e-14).ln()).sqrt();

    let p = rank as f64 / (g + 1.0);
    let center = -inverse_normal_cdf(p); // location of the 1-p quantile
    let density_at_center = (-0.5 * center * center).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let scale = ((p * (1.0 - p) / (g + 2.0)).sqrt() / density_at_center).max(1e-6);

    let lo = (center - 10.0 * scale).max(-cutoff);
    let hi = (center + 10.0 * scale).min(cutoff);

    let mut breaks = vec![-cutoff];
    // Coarse approach panels below the concentration region.
    let mut coarse_lo: Vec<f64> = Vec::new();
    let mut x = lo;
    while x > -cutoff + 1.0 {
        coarse_lo.push(x);
        x = (x - (x - -cutoff) * 0.5).min(x - 1.0);
    }
    coarse_lo.reverse();
    breaks.extend(coarse_lo);
    // Fine panels across the peak.
    let fine = 40;
    for i in 0..=fine {
        let t = lo + (hi - lo) * i as f64 / fine as f64;
        if t > *breaks.last().unwrap() {
            breaks.push(t);
        }
    }
    // Coarse panels above.
    let mut x = hi;
    while x < cutoff - 1.0 {
        x = (x + (cutoff - x) * 0.5).max(x + 1.0);
        if x < cutoff {
            breaks.push(x);
        }
    }
    if *breaks.last().unwrap() < cutoff {
        breaks.push(cutoff);
    }
    breaks
}

/// Inverse standard-normal CDF; used only to center quadrature panels.
fn inverse_normal_cdf(p: f64) -> f64 {
    use statrs::distribution::{ContinuousCDF, Normal};
    Normal::new(0.0, 1.0).unwrap().inverse_cdf(p)
}

/// Exact mean and variance of the ν-th largest of G i.i.d. standard normals,
/// by adaptive quadrature of the order-statistic density (combinatorial
/// prefactor in log space, absolute tolerance 1e-9).
pub fn order_stat_oracle(rank: usize, population: usize) -> Result<(f64, f64)> {
    if rank < 1 || rank > population {
        return Err(Error::domain(format!(
            "need 1 <= rank <= population, got rank {rank}, population {population}"
        )));
    }
    if population > 10_000_000 {
        return Err(Error::domain(format!(
            "population {population} exceeds the 1e7 numerical-stability guard"
        )));
    }
    let density = OrderStatDensity {
        ln_coef: ln_prefactor(rank, population),
        rank,
        population,
    };
    let breaks = quadrature_breaks(rank, population);
    let tol = 1e-10;
    let norm = adaptive_quadrature(&|x| density.eval(x), &breaks, tol);
    let mean = adaptive_quadrature(&|x| x * density.eval(x), &breaks, tol) / norm;
    let second = adaptive_quadrature(&|x| x * x * density.eval(x), &breaks, tol) / norm;
    Ok((mean, second - mean * mean))
}

/// Monte Carlo estimate of the ν-th largest of G standard normals: sample
/// mean, sample variance, and standard error of the mean over `trials`
/// independent draws.
pub fn empirical_order_stat<R: Rng + ?Sized>(
    rank: usize,
    population: usize,
    trials: usize,
    rng: &mut R,
) -> Result<(f64, f64, f64)> {
    if rank < 1 || rank > population {
        return Err(Error::domain(format!(
            "need 1 <= rank <= population, got rank {rank}, population {population}"
        )));
    }
    if trials < 100 {
        return Err(Error::domain(format!(
            "need at least 100 trials for a meaningful standard error, got {trials}"
        )));
    }
    let mut draws = vec![0.0_f64; population];
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for t in 0..trials {
        for d in draws.iter_mut() {
            *d = rng.sample::<f64, _>(StandardNormal);
        }
        draws.select_nth_unstable_by(rank - 1, |a, b| b.total_cmp(a));
        let x = draws[rank - 1];
        // Welford update.
        let delta = x - mean;
        mean += delta / (t + 1) as f64;
        m2 += delta * (x - mean);
    }
    let var = m2 / (trials - 1) as f64;
    Ok((mean, var, (var / trials as f64).sqrt()))
}

// ---------------------------------------------------------------------------
// Dominance analysis
// ---------------------------------------------------------------------------

/// Asymptotic statistics of the extreme order variables at a canonical
/// operating point, and the resulting zero-capture analysis.
///
/// Noise side (G = M−L, mean 0, σ = 1): S₁ is the largest and S_L the L-th
/// largest noise sample. Signal side (G = L, mean A, σ = 1): B₁ is the
/// largest and B_L the smallest signal sample. D = S_L − B₁ is positive
/// exactly when the top-L selection contains no true path.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub num_positions: usize,
    pub num_paths: usize,
    pub snr_scale: f64,
    /// Per-path amplitude A = sqrt(k·ln(M)/L).
    pub amplitude: f64,
    pub mean_sl: f64,
    pub var_sl: f64,
    pub mean_b1: f64,
    pub var_b1: f64,
    pub mean_s1: f64,
    pub var_s1: f64,
    pub mean_bl: f64,
    pub var_bl: f64,
    /// E[D] = E[S_L] − E[B₁].
    pub mean_d: f64,
    /// var[D] = var[S_L] + var[B₁] (independent sides).
    pub var_d: f64,
    /// Chebyshev lower bound on P[D > 0], present only when E[D] > 0.
    pub chebyshev_lower_bound: Option<f64>,
}

impl std::fmt::Display for DominanceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "M = {}, L = {}, k = {}, A = {:.6}",
            self.num_positions, self.num_paths, self.snr_scale, self.amplitude
        )?;
        writeln!(
            f,
            "noise  : E[S_1] = {:.6} (var {:.6})   E[S_L] = {:.6} (var {:.6})",
            self.mean_s1, self.var_s1, self.mean_sl, self.var_sl
        )?;
        writeln!(
            f,
            "signal : E[B_1] = {:.6} (var {:.6})   E[B_L] = {:.6} (var {:.6})",
            self.mean_b1, self.var_b1, self.mean_bl, self.var_bl
        )?;
        writeln!(
            f,
            "D = S_L - B_1 : mean {:.6}, var {:.6}",
            self.mean_d, self.var_d
        )?;
        match self.chebyshev_lower_bound {
            Some(b) => writeln!(f, "Chebyshev bound: P[zero capture] >= {b:.6}"),
            None => writeln!(f, "Chebyshev bound: not applicable (E[D] <= 0)"),
        }
    }
}

/// Exact mean offset of the extremes of two i.i.d. Gaussians: E[max] − m.
const TWO_SAMPLE_OFFSET: f64 = 0.564_189_583_547_756_3; // 1/sqrt(pi)
/// Exact variance of the extremes of two i.i.d. standard Gaussians.
const TWO_SAMPLE_VAR: f64 = 0.681_690_113_816_209_3; // 1 - 1/pi

/// Evaluate the dominance analysis at a canonical operating point.
///
/// Substitutions: noise side G = M−L with ν ∈ {1, L}; signal side G = L with
/// ν ∈ {1, L} and mean A. The signal side falls back to exact two-sample
/// (L = 2) and single-Gaussian (L = 1) statistics where the asymptotic
/// expansion is outside its domain. The Chebyshev bound
/// max(0, 1 − var(D)/E[D]²) is reported only when E[D] > 0.
pub fn dominance_report(c: &CanonicalParams) -> Result<DominanceReport> {
    let m = c.num_positions;
    let l = c.num_paths;
    if m < 3 {
        return Err(Error::domain(format!("need M >= 3, got {m}")));
    }
    if l >= m {
        return Err(Error::domain(
            "dominance analysis needs at least one noise position (L < M)".to_string(),
        ));
    }
    let noise_count = m - l;
    if noise_count < 3 {
        return Err(Error::domain(format!(
            "noise population M - L = {noise_count} is below the asymptotic domain (need >= 3)"
        )));
    }
    if l > noise_count {
        return Err(Error::domain(format!(
            "the L-th largest of M - L = {noise_count} noise samples does not exist for L = {l}"
        )));
    }

    let a = c.amplitude();

    let q_s1 = OrderStatQuery::new(1, noise_count, 0.0, 1.0)?;
    let q_sl = OrderStatQuery::new(l, noise_count, 0.0, 1.0)?;
    let (mean_s1, var_s1) = (cramer_mean(&q_s1)?, cramer_var(&q_s1)?);
    let (mean_sl, var_sl) = (cramer_mean(&q_sl)?, cramer_var(&q_sl)?);

    let (mean_b1, var_b1, mean_bl, var_bl) = match l {
        1 => (a, 1.0, a, 1.0),
        2 => (
            a + TWO_SAMPLE_OFFSET,
            TWO_SAMPLE_VAR,
            a - TWO_SAMPLE_OFFSET,
            TWO_SAMPLE_VAR,
        ),
        _ => {
            let q_b1 = OrderStatQuery::new(1, l, a, 1.0)?;
            let q_bl = OrderStatQuery::new(l, l, a, 1.0)?;
            (
                cramer_mean(&q_b1)?,
                cramer_var(&q_b1)?,
                cramer_mean(&q_bl)?,
                cramer_var(&q_bl)?,
            )
        }
    };

    let mean_d = mean_sl - mean_b1;
    let var_d = var_sl + var_b1;
    let chebyshev_lower_bound = if mean_d > 0.0 {
        Some((1.0 - var_d / (mean_d * mean_d)).max(0.0))
    } else {
        None
    };

    Ok(DominanceReport {
        num_positions: m,
        num_paths: l,
        snr_scale: c.snr_scale,
        amplitude: a,
        mean_sl,
        var_sl,
        mean_b1,
        var_b1,
        mean_s1,
        var_s1,
        mean_bl,
        var_bl,
        mean_d,
        var_d,
        chebyshev_lower_bound,
    })
}

/// Acquisition feasibility condition from the fixed-threshold analysis:
/// `L < sqrt(𝓔·ln(W·k₂) / (k₃·ln(2)·W·T_d))`.
///
/// Returns the right-hand side and whether the strict inequality holds.
pub fn prior_condition(p: &PhysicalParams, num_paths: usize) -> Result<(bool, f64)> {
    let report = crate::params::validate_physical(p)?;
    if !report.is_valid() {
        return Err(Error::domain(format!(
            "physical parameters fail validation: {}",
            report.failures().join(", ")
        )));
    }
    let rhs = (p.symbol_energy * (p.bandwidth * p.k2).ln()
        / (p.k3 * std::f64::consts::LN_2 * p.bandwidth * p.delay_spread))
        .sqrt();
    Ok(((num_paths as f64) < rhs, rhs))
}
