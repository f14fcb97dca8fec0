//! Cesàro averages of `a_m^k`, `s_m^k`, of `N_m / q^{m/2}` and of the cusp
//! coefficients, the trace formula with a finitely supported test function,
//! and Huang's sequence `h_m`.
//!
//! A claim of the form "average = limit + O(1/N)" is checked through the
//! partial sums `S(N) = N·(average − limit)`: they must stay bounded. For
//! each horizon we report `|S(N)|` and its running maximum over `N' ≤ N`;
//! the running maximum is what enters the factor-4 band, since `|S(N)|`
//! itself may pass arbitrarily close to zero.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chebyshev::{parity_indicator, ChebyshevCache};
use crate::error::{Error, Result};
use crate::graph::{Graph, RegularityCertificate};
use crate::lps::LpsParams;
use crate::nbt::{ensure_ramanujan, ClosedWalkCounts};
use crate::quadrature::{integrate, DEFAULT_ABS_TOL};
use crate::spectral::SpectralData;
use crate::surd::QuadSurd;
use crate::zeta::{cusp_coefficients, least_squares_slope, normalized_cusp};

pub const ANGLE_TOL: f64 = 1e-9;
pub const BAND_FACTOR: f64 = 4.0;
/// Partial-sum magnitudes below this count as zero in the band check.
pub const BAND_FLOOR: f64 = 1e-9;

/// Distance from `x` to the nearest point of `2πZ`.
fn dist_to_two_pi_z(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    r.min(2.0 * PI - r)
}

/// Frequencies `k − 2j`, `0 ≤ j ≤ ⌊(k−1)/2⌋`, appearing in `cos^k`.
fn frequencies(k: u32) -> impl Iterator<Item = u32> {
    (0..=(k.saturating_sub(1)) / 2).map(move |j| k - 2 * j)
}

/// The first principal angle `θ` with `(k−2j)θ ∈ 2πZ` for some
/// `0 ≤ j ≤ ⌊(k−1)/2⌋`, if any. Every such frequency contributes a
/// non-vanishing average to `cos^k(mθ)`, so the limit theorems need all of
/// them excluded.
pub fn angle_violation(sd: &SpectralData<f64>, k: u32) -> Option<f64> {
    let (principal, _) = sd.split_principal_singular();
    principal
        .iter()
        .map(|c| c.theta.re)
        .find(|&theta| frequencies(k).any(|f| dist_to_two_pi_z(f as f64 * theta) < ANGLE_TOL))
}

pub fn angle_condition(sd: &SpectralData<f64>, k: u32) -> bool {
    angle_violation(sd, k).is_none()
}

/// The weaker reading in which `θ` is excluded only when `(k−2j)θ ∈ 2πZ`
/// for all `j` simultaneously. It admits counterexamples (see tests).
pub fn angle_condition_intersection(sd: &SpectralData<f64>, k: u32) -> bool {
    let (principal, _) = sd.split_principal_singular();
    !principal.iter().any(|c| frequencies(k).all(|f| dist_to_two_pi_z(f as f64 * c.theta.re) < ANGLE_TOL))
}

/// `e_k · binom(k, k/2) / 2^k`.
pub fn limit_constant(k: u32) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    let mut binom = BigInt::one();
    for i in 0..k / 2 {
        binom = binom * (k - i) / (i + 1);
    }
    BigRational::new(binom, BigInt::one() << k)
}

/// Running sum with Neumaier compensation; deterministic and order-fixed.
#[derive(Clone, Copy, Debug, Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Factor band over a list of nonnegative magnitudes.
#[derive(Clone, Debug, Serialize)]
pub struct BandCheck {
    pub values: Vec<f64>,
    pub ratio: f64,
    pub factor: f64,
    pub pass: bool,
}

pub fn band_check(values: &[f64], factor: f64, floor: f64) -> BandCheck {
    let clamped: Vec<f64> = values.iter().map(|v| v.abs().max(floor)).collect();
    let max = clamped.iter().copied().fold(floor, f64::max);
    let min = clamped.iter().copied().fold(f64::INFINITY, f64::min);
    let ratio = if min.is_finite() { max / min } else { 1.0 };
    BandCheck { values: values.to_vec(), ratio, factor, pass: ratio <= factor }
}

/// `|S(N)|` at each horizon and the running maximum of `|S(N')|`, `N' ≤ N`,
/// from a per-step magnitude callback.
fn sweep_partial_sums(horizons: &[usize], mut step: impl FnMut(usize) -> f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if horizons.is_empty() || horizons.windows(2).any(|w| w[0] >= w[1]) || horizons[0] == 0 {
        return Err(Error::InvalidArgument("horizons must be positive and strictly increasing".into()));
    }
    let mut partial = Vec::with_capacity(horizons.len());
    let mut envelope = Vec::with_capacity(horizons.len());
    let mut running_max: f64 = 0.0;
    let mut next = 0;
    for m in 1..=*horizons.last().expect("nonempty") {
        let s = step(m);
        running_max = running_max.max(s);
        if m == horizons[next] {
            partial.push(s);
            envelope.push(running_max);
            next += 1;
        }
    }
    Ok((partial, envelope))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MomentKind {
    /// `a_m = Σ T_m(λ/2√q) P_λ`.
    A,
    /// `s_m = Σ U_m(λ/2√q) P_λ`.
    S,
}

#[derive(Clone, Debug, Serialize)]
pub struct CesaroReport {
    pub kind: MomentKind,
    pub k: u32,
    pub horizons: Vec<usize>,
    /// Frobenius norm of `(1/N) Σ_{m ≤ N} X_m^k − limit`.
    pub deviations: Vec<f64>,
    /// `N · deviation`.
    pub scaled: Vec<f64>,
    /// Running maximum of `N · deviation`.
    pub envelope: Vec<f64>,
    /// Fitted exponent of `N` in the deviations.
    pub rate_estimate: f64,
    /// Frobenius norm of the limit matrix.
    pub limit_norm: f64,
    pub band: BandCheck,
}

fn cesaro(sd: &SpectralData<f64>, k: u32, horizons: &[usize], kind: MomentKind) -> Result<CesaroReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("moment order must be ≥ 1".into()));
    }
    if let Some(theta) = angle_violation(sd, k) {
        return Err(Error::AngleConditionViolated { k, theta });
    }
    let (principal, _) = sd.split_principal_singular();
    let base = crate::scalar::rational_to_f64(&limit_constant(k));
    let clusters: Vec<(f64, f64, f64)> = principal
        .iter()
        .map(|c| {
            let theta = c.theta.re;
            let limit = match kind {
                MomentKind::A => base,
                MomentKind::S => base / theta.sin().powi(k as i32),
            };
            (theta, c.multiplicity as f64, limit)
        })
        .collect();
    let limit_norm = clusters.iter().map(|(_, mult, l)| mult * l * l).sum::<f64>().sqrt();
    let mut sums = vec![CompensatedSum::default(); clusters.len()];
    let (scaled, envelope) = sweep_partial_sums(horizons, |m| {
        let mut sq = 0.0;
        for ((theta, mult, limit), sum) in clusters.iter().zip(sums.iter_mut()) {
            let x = match kind {
                MomentKind::A => (m as f64 * theta).cos(),
                MomentKind::S => ((m + 1) as f64 * theta).sin() / theta.sin(),
            };
            sum.add(x.powi(k as i32) - limit);
            sq += mult * sum.value().powi(2);
        }
        sq.sqrt()
    })?;
    let deviations: Vec<f64> = scaled.iter().zip(horizons).map(|(s, &n)| s / n as f64).collect();
    let rate_estimate = least_squares_slope(
        &horizons.iter().map(|&n| (n as f64).ln()).collect::<Vec<_>>(),
        &deviations.iter().map(|d| d.max(f64::MIN_POSITIVE).ln()).collect::<Vec<_>>(),
    );
    let band = band_check(&envelope, BAND_FACTOR, BAND_FLOOR);
    Ok(CesaroReport {
        kind,
        k,
        horizons: horizons.to_vec(),
        deviations,
        scaled,
        envelope,
        rate_estimate,
        limit_norm,
        band,
    })
}

/// `(1/N) Σ a_m^k` against `e_k binom(k,k/2) 2^{−k} Σ_{principal} P_λ`.
pub fn cesaro_a(sd: &SpectralData<f64>, k: u32, horizons: &[usize]) -> Result<CesaroReport> {
    cesaro(sd, k, horizons, MomentKind::A)
}

/// `(1/N) Σ s_m^k` against `e_k binom(k,k/2) 2^{−k} Σ_{principal} sin^{−k}θ_λ P_λ`.
pub fn cesaro_s(sd: &SpectralData<f64>, k: u32, horizons: &[usize]) -> Result<CesaroReport> {
    cesaro(sd, k, horizons, MomentKind::S)
}

/// Averaged-matrix form of the Cesàro mean, `(1/N) Σ_{m ≤ N} X_m^k`, built
/// from projectors; used to cross-check the scalar sweep.
pub fn cesaro_matrix(
    sd: &SpectralData<f64>,
    k: u32,
    n_max: usize,
    kind: MomentKind,
) -> Result<crate::linalg::Mat<f64>> {
    sd.principal_sum(|c| {
        let theta = c.theta.re;
        let mut sum = CompensatedSum::default();
        for m in 1..=n_max {
            let x = match kind {
                MomentKind::A => (m as f64 * theta).cos(),
                MomentKind::S => ((m + 1) as f64 * theta).sin() / theta.sin(),
            };
            sum.add(x.powi(k as i32));
        }
        sum.value() / n_max as f64
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AverageNmReport {
    pub bipartite: bool,
    pub multiplicity_two_sqrt_q: usize,
    pub horizons: Vec<usize>,
    pub lhs: Vec<f64>,
    pub main_terms: Vec<f64>,
    pub residuals: Vec<f64>,
    /// `N · residual`.
    pub scaled: Vec<f64>,
    /// Running maximum of `|N · residual|`.
    pub envelope: Vec<f64>,
    pub band: BandCheck,
}

/// `(1/N) Σ_{m ≤ N} N_m / q^{m/2}` against the closed main term, with
/// `+2m_{2√q}` for the tempered-edge eigenvalue, evaluated exactly in
/// `Q(√q)`.
pub fn average_nm(
    g: &Graph,
    cert: &RegularityCertificate,
    sd: &SpectralData<f64>,
    horizons: &[usize],
) -> Result<AverageNmReport> {
    ensure_ramanujan(sd)?;
    let q = cert.q;
    if q < 2 {
        return Err(Error::InvalidArgument("average of N_m needs q ≥ 2".into()));
    }
    let n_max = *horizons.last().ok_or_else(|| Error::InvalidArgument("no horizons".into()))?;
    let counts = ClosedWalkCounts::compute(g, cert, n_max);
    average_nm_from_counts(q, cert.bipartite, sd.multiplicity_at_two_sqrt_q(), &counts.n_sequence(), horizons)
}

/// As [`average_nm`], with `N_1 … N_{max horizon}` supplied.
pub fn average_nm_from_counts(
    q: u64,
    bipartite: bool,
    m_edge: usize,
    n_counts: &[BigInt],
    horizons: &[usize],
) -> Result<AverageNmReport> {
    let int = |k: i64| BigRational::from_integer(BigInt::from(k));
    let mut sum = QuadSurd::zero(q);
    let mut exact_scaled = Vec::new();
    let mut lhs = Vec::new();
    let mut main_terms = Vec::new();
    let mut residuals = Vec::new();
    let (scaled, envelope) = sweep_partial_sums(horizons, |m| {
        let term = QuadSurd::sqrt_power(q, -(m as i64)).scale(&BigRational::from_integer(n_counts[m - 1].clone()));
        sum = &sum + &term;
        let main_times_n = if bipartite {
            QuadSurd::rational(int(2) * num_traits::pow(int(q as i64), m / 2 + 1) / int(q as i64 - 1), q)
        } else {
            let denom = &QuadSurd::sqrt_power(q, 1) - &QuadSurd::rational(int(1), q);
            &QuadSurd::sqrt_power(q, m as i64 + 1) * &denom.recip()
        };
        let edge = QuadSurd::rational(int(2 * m as i64 * m_edge as i64), q);
        let residual_times_n = &(&sum - &main_times_n) - &edge;
        let r = residual_times_n.to_f64();
        if horizons.contains(&m) {
            let nf = m as f64;
            lhs.push(sum.to_f64() / nf);
            main_terms.push((&main_times_n + &edge).to_f64() / nf);
            residuals.push(r / nf);
            exact_scaled.push(r);
        }
        r.abs()
    })?;
    debug_assert_eq!(scaled.len(), exact_scaled.len());
    let band = band_check(&envelope, BAND_FACTOR, BAND_FLOOR);
    Ok(AverageNmReport {
        bipartite,
        multiplicity_two_sqrt_q: m_edge,
        horizons: horizons.to_vec(),
        lhs,
        main_terms,
        residuals,
        scaled: exact_scaled,
        envelope,
        band,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspAverageReport {
    pub horizons: Vec<usize>,
    /// `(1/N) Σ_{m ≤ N} a(p^m) / (2p^{m/2})`.
    pub averages: Vec<f64>,
    /// `|average| · N`.
    pub scaled: Vec<f64>,
    /// Running maximum of `|average| · N`.
    pub envelope: Vec<f64>,
    pub band: BandCheck,
}

pub fn average_cusp(g: &Graph, params: &LpsParams, horizons: &[usize]) -> Result<CuspAverageReport> {
    let n_max = *horizons.last().ok_or_else(|| Error::InvalidArgument("no horizons".into()))?;
    let coeffs = cusp_coefficients(g, params, n_max)?;
    let normalized: Vec<f64> = coeffs.iter().enumerate().map(|(m, a)| normalized_cusp(a, params.p, m)).collect();
    average_cusp_from_normalized(&normalized, horizons)
}

/// `normalized[m] = a(p^m)/(2p^{m/2})` for `m = 0..=max horizon`.
pub fn average_cusp_from_normalized(normalized: &[f64], horizons: &[usize]) -> Result<CuspAverageReport> {
    let mut sum = CompensatedSum::default();
    let (scaled, envelope) = sweep_partial_sums(horizons, |m| {
        sum.add(normalized[m]);
        sum.value().abs()
    })?;
    let averages = scaled
        .iter()
        .zip(horizons)
        .map(|(s, &n)| {
            let total: f64 = normalized[1..=n].iter().sum();
            debug_assert!((total.abs() - s).abs() <= 1e-9 * (1.0 + s));
            total / n as f64
        })
        .collect();
    let band = band_check(&envelope, BAND_FACTOR, BAND_FLOOR);
    Ok(CuspAverageReport { horizons: horizons.to_vec(), averages, scaled, envelope, band })
}

/// Even test function `h(θ) = ĥ(0) + Σ_{m ≥ 1} 2ĥ(m) cos mθ` with finite
/// support.
#[derive(Clone, Debug, Default, PartialEq, Serialize, serde::Deserialize)]
pub struct StfTestFunction {
    pub hhat0: f64,
    /// `(m, ĥ(m))` with `m ≥ 1`.
    pub support: Vec<(usize, f64)>,
}

impl StfTestFunction {
    pub fn constant(c: f64) -> Self {
        Self { hhat0: c, support: Vec::new() }
    }

    pub fn single(m: usize, value: f64) -> Self {
        Self { hhat0: 0.0, support: vec![(m, value)] }
    }

    pub fn max_frequency(&self) -> usize {
        self.support.iter().map(|&(m, _)| m).max().unwrap_or(0)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.hhat0 + self.support.iter().map(|&(m, v)| 2.0 * v * (m as f64 * theta).cos()).sum::<f64>()
    }

    /// `h` at the angle of `x = cos θ`, through `T_m(x)`; valid for `|x| > 1`.
    pub fn eval_at_cos(&self, x: f64) -> f64 {
        let cache = ChebyshevCache::new(x, self.max_frequency());
        self.hhat0 + self.support.iter().map(|&(m, v)| 2.0 * v * cache.t(m)).sum::<f64>()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StfReport {
    pub lhs: f64,
    pub integral_term: f64,
    pub cycle_term: f64,
    pub geometric_side: f64,
    pub discrepancy: f64,
}

/// Both sides of the trace formula with exact `N_m` on the geometric side.
pub fn stf_verify(
    g: &Graph,
    cert: &RegularityCertificate,
    sd: &SpectralData<f64>,
    h: &StfTestFunction,
) -> Result<StfReport> {
    if h.support.iter().any(|&(m, _)| m == 0) {
        return Err(Error::InvalidArgument("ĥ(0) goes in hhat0".into()));
    }
    let counts = ClosedWalkCounts::compute(g, cert, h.max_frequency());
    let n_m: Vec<BigInt> = counts.n_sequence();
    stf_from_counts(g.n(), cert.q, sd, &n_m, h)
}

pub fn stf_from_counts(
    n: usize,
    q: u64,
    sd: &SpectralData<f64>,
    n_m: &[BigInt],
    h: &StfTestFunction,
) -> Result<StfReport> {
    let lhs: f64 = sd.clusters().iter().map(|c| c.multiplicity as f64 * h.eval_at_cos(sd.scaled(c))).sum();
    let qf = q as f64;
    let kernel = |t: f64| {
        let s = t.sin();
        let c = t.cos();
        s * s / ((qf + 1.0).powi(2) - 4.0 * qf * c * c) * h.eval(t)
    };
    let integral = integrate(kernel, 0.0, PI, DEFAULT_ABS_TOL)?;
    let integral_term = 2.0 * n as f64 * qf * (qf + 1.0) / PI * integral;
    let cycle_term: f64 =
        h.support.iter().map(|&(m, v)| crate::nbt::bigint_to_f64(&n_m[m - 1]) * qf.powf(-(m as f64) / 2.0) * v).sum();
    let geometric_side = integral_term + cycle_term;
    Ok(StfReport { lhs, integral_term, cycle_term, geometric_side, discrepancy: (lhs - geometric_side).abs() })
}

/// Huang's `h_m`, evaluated exactly in `Q(√q)` before rounding.
pub fn huang_h(n: usize, q: u64, bipartite: bool, m: usize, n_m: &BigInt) -> f64 {
    let int = |k: i64| BigRational::from_integer(BigInt::from(k));
    let e = parity_indicator(m as u64) as i64;
    let inv = QuadSurd::sqrt_power(q, -(m as i64));
    // 2 T_m((q+1)/2√q) = q^{m/2} + q^{−m/2}
    let two_t = &QuadSurd::sqrt_power(q, m as i64) + &inv;
    let base = if bipartite { 2 * (n as i64 - 2) } else { 2 * (n as i64 - 1) };
    let mut h = QuadSurd::rational(int(base), q);
    h = &h + &inv.scale(&int(n as i64 * e * (q as i64 - 1)));
    h = &h + &if bipartite { two_t.scale(&int(2 * e)) } else { two_t };
    h = &h - &inv.scale(&BigRational::from_integer(n_m.clone()));
    h.to_f64()
}

/// `h_1 … h_{m_max}`.
pub fn huang_sequence(g: &Graph, cert: &RegularityCertificate, m_max: usize) -> Vec<f64> {
    let counts = ClosedWalkCounts::compute(g, cert, m_max);
    (1..=m_max).map(|m| huang_h(g.n(), cert.q, cert.bipartite, m, &counts.n_reduced(m))).collect()
}

/// `Σ_{m=1}^{N} cos mφ`.
pub fn cosine_partial_sum(phi: f64, n: usize) -> f64 {
    let mut s = CompensatedSum::default();
    for m in 1..=n {
        s.add((m as f64 * phi).cos());
    }
    s.value()
}
