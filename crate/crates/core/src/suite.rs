//! Configurable verification runs over a single graph, producing one
//! pass/fail record per check.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{certify_regular, load_graph, Graph, NamedGraph, RegularityCertificate};
use crate::limits::{
    angle_condition, average_cusp, average_nm, cesaro_a, cesaro_s, huang_sequence, stf_from_counts, StfTestFunction,
};
use crate::lps::{build_lps, LpsParams};
use crate::nbt::{int_mat_to, m_matrix_chebyshev, principal_am, ClosedWalkCounts, ReducedSweep};
use crate::oracle::{count_nbt_closed_bf, count_reduced_cycles_bf, count_reduced_paths_from_bf, OracleOptions};
use crate::spectral::{eigendecompose, SpectralData};
use crate::zeta::{
    cusp_bound, cusp_coefficients, ihara_bass_truncated, normalized_cusp, phi_residue_profile, phi_series,
    verify_ihara_bass, zeta_series_from_counts,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Oracle,
    Chebyshev,
    IharaBass,
    Range,
    Cesaro,
    AverageNm,
    Stf,
    Cusp,
    Phi,
    Huang,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Oracle,
        Check::Chebyshev,
        Check::IharaBass,
        Check::Range,
        Check::Cesaro,
        Check::AverageNm,
        Check::Stf,
        Check::Cusp,
        Check::Phi,
        Check::Huang,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Oracle => "oracle",
            Check::Chebyshev => "chebyshev",
            Check::IharaBass => "ihara-bass",
            Check::Range => "range",
            Check::Cesaro => "cesaro",
            Check::AverageNm => "average-nm",
            Check::Stf => "stf",
            Check::Cusp => "cusp",
            Check::Phi => "phi",
            Check::Huang => "huang",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::UnknownName(format!("check `{s}`")))
    }
}

/// Where the graph comes from: a named graph, a file, or an LPS pair
/// written `lps:p,q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GraphSource {
    Named(NamedGraph),
    File(PathBuf),
    Lps { p: u64, q: u64 },
}

impl FromStr for GraphSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("lps:") {
            let (p, q) = parse_pair(rest)?;
            return Ok(GraphSource::Lps { p, q });
        }
        if let Ok(named) = s.parse::<NamedGraph>() {
            return Ok(GraphSource::Named(named));
        }
        let path = PathBuf::from(s);
        if path.exists() {
            Ok(GraphSource::File(path))
        } else {
            Err(Error::UnknownName(format!("graph `{s}` is neither a known name nor an existing file")))
        }
    }
}

/// `"13,5"` → `(13, 5)`.
pub fn parse_pair(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::InvalidArgument(format!("expected `p,q`, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

impl TryFrom<String> for GraphSource {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GraphSource> for String {
    fn from(g: GraphSource) -> String {
        g.to_string()
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::Named(n) => write!(f, "{n}"),
            GraphSource::File(p) => write!(f, "{}", p.display()),
            GraphSource::Lps { p, q } => write!(f, "lps:{p},{q}"),
        }
    }
}

/// A loaded graph plus LPS parameters when they are known.
pub struct LoadedGraph {
    pub graph: Graph,
    pub lps: Option<LpsParams>,
}

/// Path of the LPS parameter file written next to a graph file.
pub fn lps_sidecar_path(graph_path: &std::path::Path) -> PathBuf {
    let stem = graph_path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    graph_path.with_file_name(format!("{stem}.lps.json"))
}

#[derive(Deserialize)]
struct Sidecar {
    p: u64,
    q: u64,
}

impl GraphSource {
    pub fn load(&self) -> Result<LoadedGraph> {
        match self {
            GraphSource::Named(n) => Ok(LoadedGraph { graph: n.build(), lps: None }),
            GraphSource::Lps { p, q } => {
                let lps = build_lps(*p, *q)?;
                Ok(LoadedGraph { graph: lps.graph, lps: Some(lps.params) })
            }
            GraphSource::File(path) => {
                let graph = load_graph(path)?;
                let sidecar = lps_sidecar_path(path);
                let lps = if sidecar.exists() {
                    let text = std::fs::read_to_string(&sidecar)?;
                    let s: Sidecar = serde_json::from_str(&text)
                        .map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
                    Some(LpsParams::new(s.p, s.q)?)
                } else {
                    None
                };
                Ok(LoadedGraph { graph, lps })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Orders {
    pub oracle_m: usize,
    pub chebyshev_m: usize,
    pub ihara_bass: usize,
    pub range_m: usize,
    pub stf_m: usize,
    pub phi: usize,
    pub huang_m: usize,
    pub cesaro_k: u32,
}

impl Default for Orders {
    fn default() -> Self {
        Self {
            oracle_m: 10,
            chebyshev_m: 30,
            ihara_bass: 10,
            range_m: 200,
            stf_m: 12,
            phi: 8,
            huang_m: 30,
            cesaro_k: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative to `q^{m/2}`.
    pub chebyshev: f64,
    pub range: f64,
    pub stf: f64,
    pub phi: f64,
    /// Allowed deviation of the `(t−1)φ(t)` log–log slope from 1.
    pub phi_slope: f64,
    pub huang: f64,
    pub band: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { chebyshev: 1e-6, range: 1e-9, stf: 1e-8, phi: 1e-6, phi_slope: 0.1, huang: 1e-9, band: 4.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationSuiteConfig {
    pub graph: GraphSource,
    #[serde(default = "all_checks")]
    pub checks: Vec<Check>,
    /// Overrides the default horizons of cesaro, average-nm and cusp.
    #[serde(default)]
    pub horizons: Option<Vec<usize>>,
    #[serde(default)]
    pub orders: Orders,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub report: Option<PathBuf>,
}

fn all_checks() -> Vec<Check> {
    Check::ALL.to_vec()
}

fn default_budget() -> u64 {
    crate::oracle::DEFAULT_BUDGET
}

impl VerificationSuiteConfig {
    pub fn new(graph: GraphSource, checks: Vec<Check>) -> Self {
        Self {
            graph,
            checks,
            horizons: None,
            orders: Orders::default(),
            tolerances: Tolerances::default(),
            budget: default_budget(),
            report: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

/// One row of the summary report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: Check,
    pub status: Status,
    pub metric: Option<f64>,
    pub tolerance: Option<f64>,
    pub seconds: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub graph: String,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    /// Nothing failed or errored; skipped checks do not count against.
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| matches!(r.status, Status::Pass | Status::Skipped))
    }
}

struct Outcome {
    status: Status,
    metric: f64,
    tolerance: f64,
    detail: String,
}

impl Outcome {
    fn at_most(metric: f64, tolerance: f64, detail: String) -> Self {
        let status = if metric <= tolerance { Status::Pass } else { Status::Fail };
        Self { status, metric, tolerance, detail }
    }

    fn skipped(detail: impl Into<String>) -> Self {
        Self { status: Status::Skipped, metric: f64::NAN, tolerance: f64::NAN, detail: detail.into() }
    }
}

struct Context {
    graph: Graph,
    cert: Result<RegularityCertificate>,
    lps: Option<LpsParams>,
    spectrum: Option<Result<SpectralData<f64>>>,
}

impl Context {
    fn cert(&self) -> Result<&RegularityCertificate> {
        self.cert.as_ref().map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    fn spectrum(&mut self) -> Result<&SpectralData<f64>> {
        if self.spectrum.is_none() {
            let sd = match &self.cert {
                Ok(cert) => eigendecompose(&self.graph, cert, None),
                Err(e) => Err(Error::InvalidArgument(e.to_string())),
            };
            self.spectrum = Some(sd);
        }
        self.spectrum.as_ref().expect("just set").as_ref().map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    fn is_ramanujan(&mut self) -> Result<bool> {
        let sd = self.spectrum()?;
        Ok(crate::nbt::ensure_ramanujan(sd).is_ok())
    }
}

/// Runs the configured checks in dependency order and writes the JSON
/// summary if a report path is set. Individual check errors are recorded
/// in the report rather than returned.
pub fn run_suite(config: &VerificationSuiteConfig) -> Result<SuiteReport> {
    let loaded = config.graph.load()?;
    let mut ctx =
        Context { cert: certify_regular(&loaded.graph), graph: loaded.graph, lps: loaded.lps, spectrum: None };
    let mut checks = config.checks.clone();
    checks.sort();
    checks.dedup();
    let mut results = Vec::new();
    for check in checks {
        let start = Instant::now();
        let outcome = run_check(check, config, &mut ctx);
        let seconds = start.elapsed().as_secs_f64();
        let result = match outcome {
            Ok(o) => CheckResult {
                check,
                status: o.status,
                metric: o.metric.is_finite().then_some(o.metric),
                tolerance: o.tolerance.is_finite().then_some(o.tolerance),
                seconds,
                detail: o.detail,
            },
            Err(e) => CheckResult {
                check,
                status: Status::Error,
                metric: None,
                tolerance: None,
                seconds,
                detail: e.to_string(),
            },
        };
        results.push(result);
    }
    let report = SuiteReport { graph: config.graph.to_string(), results };
    if let Some(path) = &config.report {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(path, text + "\n")?;
    }
    Ok(report)
}

fn horizons_or(config: &VerificationSuiteConfig, default: &[usize]) -> Vec<usize> {
    config.horizons.clone().unwrap_or_else(|| default.to_vec())
}

fn run_check(check: Check, config: &VerificationSuiteConfig, ctx: &mut Context) -> Result<Outcome> {
    let tol = &config.tolerances;
    let orders = &config.orders;
    let opts = OracleOptions { budget: config.budget, ..OracleOptions::default() };
    match check {
        Check::Oracle => oracle_check(ctx, orders.oracle_m, &opts),
        Check::Chebyshev => {
            let cert = ctx.cert()?.clone();
            let sd = ctx.spectrum()?.clone();
            let mut worst: f64 = 0.0;
            for item in ReducedSweep::new(&ctx.graph, &cert).skip(1).take(orders.chebyshev_m) {
                let spectral = m_matrix_chebyshev(&sd, item.m)?;
                let scale = (cert.q as f64).powf(item.m as f64 / 2.0);
                worst = worst.max(spectral.max_abs_diff(&int_mat_to(&item.reduced)) / scale);
            }
            Ok(Outcome::at_most(
                worst,
                tol.chebyshev,
                format!("max |M_m − Chebyshev form| / q^(m/2), m ≤ {}", orders.chebyshev_m),
            ))
        }
        Check::IharaBass => {
            let order = orders.ihara_bass;
            let gap = if ctx.graph.n() <= 40 {
                crate::scalar::rational_to_f64(&verify_ihara_bass(&ctx.graph, order, &opts)?)
            } else {
                // exact counts from the matrix recurrence against the truncated determinant
                let cert = ctx.cert()?.clone();
                let counts = ClosedWalkCounts::compute(&ctx.graph, &cert, order).n_sequence();
                let from_counts = zeta_series_from_counts(&counts, order);
                let from_det = ihara_bass_truncated(&ctx.graph, order).zeta_series(order)?;
                from_counts.max_abs_diff(&from_det)
            };
            Ok(Outcome::at_most(gap, 0.0, format!("max coefficient gap through degree {order}")))
        }
        Check::Range => {
            let sd = ctx.spectrum()?.clone();
            let mut overshoot = f64::NEG_INFINITY;
            for m in 1..=orders.range_m {
                let a = principal_am(&sd, m)?;
                overshoot = overshoot.max(a.max_abs() - 1.0);
            }
            Ok(Outcome::at_most(overshoot, tol.range, format!("max |entry of a_m| − 1, m ≤ {}", orders.range_m)))
        }
        Check::Cesaro => {
            let horizons = horizons_or(config, &[100, 200, 400]);
            let sd = ctx.spectrum()?.clone();
            let mut worst: f64 = 1.0;
            let mut skipped = Vec::new();
            for k in 1..=orders.cesaro_k {
                if !angle_condition(&sd, k) {
                    skipped.push(k);
                    continue;
                }
                for report in [cesaro_a(&sd, k, &horizons)?, cesaro_s(&sd, k, &horizons)?] {
                    worst = worst.max(report.band.ratio);
                }
            }
            let detail = if skipped.is_empty() {
                "worst envelope ratio of N·deviation".to_string()
            } else {
                format!("worst envelope ratio of N·deviation; k = {skipped:?} excluded by the angle condition")
            };
            Ok(Outcome::at_most(worst, tol.band, detail))
        }
        Check::AverageNm => {
            if !ctx.is_ramanujan()? {
                return Ok(Outcome::skipped("graph is not Ramanujan"));
            }
            let cert = ctx.cert()?.clone();
            if cert.q < 2 {
                return Ok(Outcome::skipped("needs q ≥ 2"));
            }
            let horizons = horizons_or(config, &[20, 40, 80]);
            let sd = ctx.spectrum()?.clone();
            let report = average_nm(&ctx.graph, &cert, &sd, &horizons)?;
            Ok(Outcome::at_most(
                report.band.ratio,
                tol.band,
                format!("envelope ratio of N·residual, scaled = {:?}", report.scaled),
            ))
        }
        Check::Stf => {
            let cert = ctx.cert()?.clone();
            let sd = ctx.spectrum()?.clone();
            let counts = ClosedWalkCounts::compute(&ctx.graph, &cert, orders.stf_m).n_sequence();
            let mut worst: f64 = 0.0;
            let mut tests = vec![StfTestFunction::constant(1.0)];
            tests.extend((1..=orders.stf_m).map(|m| StfTestFunction::single(m, 1.0)));
            for h in &tests {
                worst = worst.max(stf_from_counts(ctx.graph.n(), cert.q, &sd, &counts, h)?.discrepancy);
            }
            Ok(Outcome::at_most(
                worst,
                tol.stf,
                format!("max discrepancy over the constant and ĥ(m₀)=1, m₀ ≤ {}", orders.stf_m),
            ))
        }
        Check::Cusp => {
            let Some(params) = ctx.lps.clone() else {
                return Ok(Outcome::skipped("not an LPS graph"));
            };
            let horizons = horizons_or(config, &[50, 100, 200]);
            let sd = ctx.spectrum()?.clone();
            let report = average_cusp(&ctx.graph, &params, &horizons)?;
            let bound = cusp_bound(&sd);
            let coeffs = cusp_coefficients(&ctx.graph, &params, *horizons.last().expect("horizons"))?;
            let worst_coeff =
                coeffs.iter().enumerate().map(|(m, a)| normalized_cusp(a, params.p, m).abs()).fold(0.0, f64::max);
            let mut outcome = Outcome::at_most(
                report.band.ratio,
                tol.band,
                format!(
                    "envelope ratio of |average|·N = {:?}; max |a/(2p^(m/2))| = {worst_coeff:.6} ≤ {bound:.6}",
                    report.scaled
                ),
            );
            if worst_coeff > bound * (1.0 + 1e-9) {
                outcome.status = Status::Fail;
            }
            Ok(outcome)
        }
        Check::Phi => {
            let Some(params) = ctx.lps.clone() else {
                return Ok(Outcome::skipped("not an LPS graph"));
            };
            let sd = ctx.spectrum()?.clone();
            let phi = phi_series(&ctx.graph, &params, &sd, orders.phi)?;
            let (_, slope) = phi_residue_profile(&sd, params.bipartite_expected(), &[1e-2, 1e-3, 1e-4]);
            let mut outcome = Outcome::at_most(
                phi.max_discrepancy(),
                tol.phi,
                format!("max coefficient gap through degree {}; residue slope {slope:.4}", orders.phi),
            );
            if (slope - 1.0).abs() > tol.phi_slope {
                outcome.status = Status::Fail;
            }
            Ok(outcome)
        }
        Check::Huang => {
            if !ctx.is_ramanujan()? {
                return Ok(Outcome::skipped("graph is not Ramanujan"));
            }
            let cert = ctx.cert()?.clone();
            let h = huang_sequence(&ctx.graph, &cert, orders.huang_m);
            let min_even = h.iter().skip(1).step_by(2).copied().fold(f64::INFINITY, f64::min);
            Ok(Outcome::at_most(-min_even, tol.huang, format!("−min h_m over even m ≤ {}", orders.huang_m)))
        }
    }
}

/// Exact agreement of the recurrences with brute-force enumeration.
fn oracle_check(ctx: &mut Context, m_max: usize, opts: &OracleOptions) -> Result<Outcome> {
    let cert = ctx.cert()?.clone();
    let g = &ctx.graph;
    let n = g.n();
    let m_max = if n > 100 { m_max.min(6) } else { m_max };
    let rows: Vec<usize> = if n > 100 { vec![0, n / 2, n - 1] } else { (0..n).collect() };
    let mut mismatches = 0u64;
    for item in ReducedSweep::new(g, &cert).take(m_max + 1) {
        let m = item.m;
        for &i in &rows {
            let counts = count_reduced_paths_from_bf(g, i, m, opts)?;
            mismatches += counts.iter().zip(item.a.row(i)).filter(|(c, a)| BigInt::from(**c) != **a).count() as u64;
            let closed = count_nbt_closed_bf(g, i, m, opts)?;
            mismatches += u64::from(BigInt::from(closed) != item.a[(i, i)]);
        }
        if m >= 1 {
            let cycles = count_reduced_cycles_bf(g, m, opts)?;
            let diff = BigInt::from(cycles) - item.reduced.trace();
            if !diff.is_zero() {
                mismatches += diff.abs().try_into().unwrap_or(u64::MAX).max(1);
            }
        }
    }
    Ok(Outcome::at_most(mismatches as f64, 0.0, format!("mismatched counts, m ≤ {m_max}")))
}
