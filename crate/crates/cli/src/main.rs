use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use ihara_core::chebyshev::{parity_indicator, ChebyshevCache};
use ihara_core::graph::{certify_regular, save_graph, to_json, Graph, GraphFormat};
use ihara_core::limits::{angle_condition, cesaro_a, cesaro_s, huang_h, stf_verify, StfTestFunction};
use ihara_core::lps::{build_lps_with, LpsOptions};
use ihara_core::nbt::ClosedWalkCounts;
use ihara_core::oracle::{
    count_nbt_closed_bf, count_reduced_cycles_bf, count_reduced_paths_from_bf, lattice_count, OracleOptions,
    DEFAULT_BUDGET,
};
use ihara_core::spectral::{eigendecompose, eigenvalue_spectrum};
use ihara_core::suite::{lps_sidecar_path, parse_pair, run_suite, Check, GraphSource, Status, VerificationSuiteConfig};
use ihara_core::zeta::{
    cusp_coefficients, det_poly_from_spectrum, eisenstein_c_for, ihara_bass_reciprocal, lps_walk_counts,
    normalized_cusp, theta_coefficient,
};
use ihara_core::{FloatSeries, LpsParams, Spectrum};

#[derive(Parser)]
#[command(
    name = "ihara-lab",
    version,
    about = "Reduced cycles, Ihara zeta functions and Chebyshev moment limits of regular graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleWhat {
    ReducedCycles,
    Paths,
    NbtClosed,
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Edges,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a graph and optionally write it to a file.
    Graph {
        /// Named graph (k3, k4, k33, petersen, cube, cycle:N), `lps:p,q`, or a file.
        source: GraphSource,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Build the LPS graph X^{p,q}.
    Lps {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Graph JSON; the parameters go to `<stem>.lps.json` beside it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Permit q above the default size guard.
        #[arg(long)]
        allow_large: bool,
    },
    /// Distinct eigenvalues with multiplicities and spectral angles.
    Spectrum {
        source: GraphSource,
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Clustering tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Exact reduced-cycle counts N_m, their Chebyshev form and f_m.
    Nbt {
        source: GraphSource,
        #[arg(long, default_value_t = 20)]
        m_max: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Brute-force enumeration counts.
    Oracle {
        source: Option<GraphSource>,
        #[arg(long, value_enum)]
        what: OracleWhat,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Start vertex for paths and closed walks.
        #[arg(long, default_value_t = 0)]
        vertex: usize,
        /// For `lattice`: the prime q of the quadratic form.
        #[arg(long)]
        qprime: Option<u64>,
        /// For `lattice`: the represented integer.
        #[arg(long)]
        target: Option<u128>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Ihara zeta function via the determinant formula.
    Zeta {
        source: GraphSource,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Theta, Eisenstein and cusp coefficients of an LPS graph.
    Cuspgen {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Cesàro averages of a_m^k and s_m^k.
    Limits {
        source: GraphSource,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, value_delimiter = ',', default_value = "100,200,400")]
        horizons: Vec<usize>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Both sides of the trace formula for a finitely supported test function.
    Stf {
        source: GraphSource,
        /// Comma-separated `m:value` pairs for ĥ(m), m ≥ 1.
        #[arg(long, value_delimiter = ',')]
        hhat: Vec<String>,
        #[arg(long, default_value_t = 0.0)]
        hhat0: f64,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Huang's sequence h_m.
    Huang {
        source: GraphSource,
        #[arg(long, default_value_t = 30)]
        m_max: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run verification checks and write a JSON summary.
    Verify {
        /// Named graph, `lps:p,q`, or a graph file.
        #[arg(long, conflicts_with_all = ["lps", "config"])]
        graph: Option<GraphSource>,
        /// `p,q`.
        #[arg(long, conflicts_with = "config")]
        lps: Option<String>,
        /// JSON file mirroring the suite configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated subset of the checks; all of them by default.
        #[arg(long, value_delimiter = ',', value_parser = parse_check)]
        checks: Vec<Check>,
        /// Horizons N for the averaged checks.
        #[arg(long, value_delimiter = ',')]
        horizons: Option<Vec<usize>>,
        /// Summary JSON path; without it the summary goes to stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Cap on oracle enumeration steps.
        #[arg(long)]
        budget: Option<u64>,
        /// Band factor for the O(1/N) checks.
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn parse_check(s: &str) -> std::result::Result<Check, String> {
    s.parse::<Check>().map_err(|_| {
        let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
        format!("unknown check `{s}` (expected one of: {})", names.join(", "))
    })
}

/// Seventeen significant digits, so values round-trip.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_writer(emit: Option<&Path>) -> Result<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match emit {
        Some(path) => Box::new(std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(std::io::stdout()),
    };
    Ok(csv::Writer::from_writer(sink))
}

fn write_json(emit: Option<&Path>, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match emit {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load(source: &GraphSource) -> Result<(Graph, Option<LpsParams>)> {
    let loaded = source.load().with_context(|| format!("loading graph `{source}`"))?;
    Ok((loaded.graph, loaded.lps))
}

fn spectrum_of(g: &Graph, tol: Option<f64>) -> Result<Spectrum> {
    let cert = certify_regular(g)?;
    Ok(eigendecompose(g, &cert, tol)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Graph { source, out, format } => {
            let (g, _) = load(&source)?;
            describe(&g);
            if let Some(out) = out {
                let fmt = match format {
                    Some(Format::Json) => GraphFormat::Json,
                    Some(Format::Edges) => GraphFormat::EdgeList,
                    None => GraphFormat::from_path(&out),
                };
                save_graph(&g, &out, fmt)?;
            }
        }
        Command::Lps { p, q, out, allow_large } => {
            let lps = build_lps_with(p, q, LpsOptions { allow_large })?;
            describe(&lps.graph);
            println!("group {:?}, generators {}", lps.params.group_kind, lps.generators.len());
            if let Some(out) = out {
                std::fs::write(&out, to_json(&lps.graph))?;
                let sidecar = lps_sidecar_path(&out);
                std::fs::write(&sidecar, serde_json::to_string_pretty(&lps.params)? + "\n")?;
            }
        }
        Command::Spectrum { source, emit, tol } => {
            let (g, _) = load(&source)?;
            let sd = spectrum_of(&g, tol)?;
            let mut w = csv_writer(emit.as_deref())?;
            w.write_record(["lambda", "multiplicity", "re_theta", "im_theta"])?;
            for c in sd.clusters() {
                w.write_record([
                    fmt_f64(c.lambda),
                    c.multiplicity.to_string(),
                    fmt_f64(c.theta.re),
                    fmt_f64(c.theta.im),
                ])?;
            }
            w.flush()?;
        }
        Command::Nbt { source, m_max, emit } => {
            let (g, _) = load(&source)?;
            let cert = certify_regular(&g)?;
            let sd = if g.n() <= 600 {
                eigendecompose::<f64>(&g, &cert, None)?
            } else {
                eigenvalue_spectrum::<f64>(&g, &cert, None)?
            };
            let counts = ClosedWalkCounts::compute(&g, &cert, m_max);
            let mut w = csv_writer(emit.as_deref())?;
            w.write_record(["m", "N_m", "trace_Mm_float", "f_m"])?;
            for m in 1..=m_max {
                let scale = 2.0 * (cert.q as f64).powf(m as f64 / 2.0);
                let spectral: f64 = sd
                    .clusters()
                    .iter()
                    .map(|c| c.multiplicity as f64 * scale * ChebyshevCache::new(sd.scaled(c), m).t(m))
                    .sum::<f64>()
                    + (g.n() as u64 * parity_indicator(m as u64) * (cert.q - 1)) as f64;
                w.write_record([
                    m.to_string(),
                    counts.n_reduced(m).to_string(),
                    fmt_f64(spectral),
                    counts.f(m, 0).to_string(),
                ])?;
            }
            w.flush()?;
        }
        Command::Oracle { source, what, m, vertex, qprime, target, budget } => {
            let opts = OracleOptions { budget, ..OracleOptions::default() };
            if what == OracleWhat::Lattice {
                let (Some(qp), Some(t)) = (qprime, target) else {
                    bail!("lattice needs --qprime and --target");
                };
                println!("{}", lattice_count(qp, t));
                return Ok(ExitCode::SUCCESS);
            }
            let Some(source) = source else { bail!("a graph source is required") };
            let (g, _) = load(&source)?;
            match what {
                OracleWhat::ReducedCycles => println!("{}", count_reduced_cycles_bf(&g, m, &opts)?),
                OracleWhat::NbtClosed => println!("{}", count_nbt_closed_bf(&g, vertex, m, &opts)?),
                OracleWhat::Paths => {
                    let counts = count_reduced_paths_from_bf(&g, vertex, m, &opts)?;
                    let mut w = csv_writer(None)?;
                    w.write_record(["target", "count"])?;
                    for (j, c) in counts.iter().enumerate() {
                        w.write_record([j.to_string(), c.to_string()])?;
                    }
                    w.flush()?;
                }
                OracleWhat::Lattice => unreachable!(),
            }
        }
        Command::Zeta { source, order, mode, emit } => {
            let (g, _) = load(&source)?;
            let value = match mode {
                Mode::Exact => {
                    let z = ihara_bass_reciprocal(&g)?;
                    let strings = |s: &[num_rational::BigRational]| s.iter().map(|c| c.to_string()).collect::<Vec<_>>();
                    json!({
                        "mode": "exact",
                        "betti_r": z.betti_r,
                        "det_poly": z.det_poly.iter().map(BigInt::to_string).collect::<Vec<_>>(),
                        "zeta": strings(z.zeta_series(order)?.coeffs()),
                        "reciprocal": strings(z.reciprocal_series(order)?.coeffs()),
                        "cycle_counts": strings(&z.log_derivative_u(order)?.coeffs()[1..]),
                    })
                }
                Mode::Float => {
                    let sd = spectrum_of(&g, None)?;
                    let det = FloatSeries::new(det_poly_from_spectrum(&sd), order);
                    let r = g.betti_number();
                    let one_minus_u2 = FloatSeries::new(vec![1.0, 0.0, -1.0], order);
                    let reciprocal = &one_minus_u2.powi(r - 1)? * &det;
                    let zeta = reciprocal.inverse()?;
                    let f = |s: &FloatSeries| s.coeffs().iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>();
                    json!({
                        "mode": "float",
                        "betti_r": r,
                        "zeta": f(&zeta),
                        "reciprocal": f(&reciprocal),
                    })
                }
            };
            write_json(emit.as_deref(), &value)?;
        }
        Command::Cuspgen { p, q, order, emit } => {
            let lps = build_lps_with(p, q, LpsOptions::default())?;
            let counts = lps_walk_counts(&lps.graph, order)?;
            let cusp = cusp_coefficients(&lps.graph, &lps.params, order)?;
            let mut w = csv_writer(emit.as_deref())?;
            w.write_record(["m", "theta_coefficient", "eisenstein", "cusp", "cusp_normalized"])?;
            for (m, a) in cusp.iter().enumerate() {
                w.write_record([
                    m.to_string(),
                    theta_coefficient(&counts, m).to_string(),
                    eisenstein_c_for(&lps.params, m).to_string(),
                    a.to_string(),
                    fmt_f64(normalized_cusp(a, p, m)),
                ])?;
            }
            w.flush()?;
        }
        Command::Limits { source, k, horizons, emit } => {
            let (g, _) = load(&source)?;
            let sd = spectrum_of(&g, None)?;
            if !angle_condition(&sd, k) {
                bail!("angle condition fails for k = {k}; the Cesàro limit is not the stated one");
            }
            let mut w = csv_writer(emit.as_deref())?;
            w.write_record(["kind", "k", "N", "deviation", "scaled", "envelope"])?;
            for (kind, report) in [("a", cesaro_a(&sd, k, &horizons)?), ("s", cesaro_s(&sd, k, &horizons)?)] {
                for i in 0..report.horizons.len() {
                    w.write_record([
                        kind.to_string(),
                        k.to_string(),
                        report.horizons[i].to_string(),
                        fmt_f64(report.deviations[i]),
                        fmt_f64(report.scaled[i]),
                        fmt_f64(report.envelope[i]),
                    ])?;
                }
            }
            w.flush()?;
        }
        Command::Stf { source, hhat, hhat0, emit } => {
            let (g, _) = load(&source)?;
            let cert = certify_regular(&g)?;
            let sd = eigendecompose(&g, &cert, None)?;
            let mut support = Vec::new();
            for item in &hhat {
                let (m, v) = item.split_once(':').with_context(|| format!("expected m:value, got `{item}`"))?;
                let m: usize = m.trim().parse().with_context(|| format!("bad frequency in `{item}`"))?;
                if m == 0 {
                    bail!("use --hhat0 for ĥ(0)");
                }
                support.push((m, v.trim().parse::<f64>().with_context(|| format!("bad value in `{item}`"))?));
            }
            let report = stf_verify(&g, &cert, &sd, &StfTestFunction { hhat0, support })?;
            write_json(emit.as_deref(), &serde_json::to_value(&report)?)?;
        }
        Command::Huang { source, m_max, emit } => {
            let (g, _) = load(&source)?;
            let cert = certify_regular(&g)?;
            let counts = ClosedWalkCounts::compute(&g, &cert, m_max);
            let mut w = csv_writer(emit.as_deref())?;
            w.write_record(["m", "h_m"])?;
            for m in 1..=m_max {
                w.write_record([
                    m.to_string(),
                    fmt_f64(huang_h(g.n(), cert.q, cert.bipartite, m, &counts.n_reduced(m))),
                ])?;
            }
            w.flush()?;
        }
        Command::Verify { graph, lps, config, checks, horizons, report, budget, tol } => {
            let mut cfg = match (config, graph, lps) {
                (Some(path), _, _) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str::<VerificationSuiteConfig>(&text)
                        .with_context(|| format!("parsing {}", path.display()))?
                }
                (None, Some(g), _) => VerificationSuiteConfig::new(g, Check::ALL.to_vec()),
                (None, None, Some(pair)) => {
                    let (p, q) = parse_pair(&pair)?;
                    VerificationSuiteConfig::new(GraphSource::Lps { p, q }, Check::ALL.to_vec())
                }
                (None, None, None) => bail!("one of --graph, --lps or --config is required"),
            };
            if !checks.is_empty() {
                cfg.checks = checks;
            }
            if horizons.is_some() {
                cfg.horizons = horizons;
            }
            if report.is_some() {
                cfg.report = report;
            }
            if let Some(b) = budget {
                cfg.budget = b;
            }
            if let Some(t) = tol {
                cfg.tolerances.band = t;
            }
            let to_stdout = cfg.report.is_none();
            let summary = run_suite(&cfg)?;
            for r in &summary.results {
                let metric = r.metric.map_or_else(|| "-".to_string(), |m| format!("{m:.3e}"));
                let tolerance = r.tolerance.map_or_else(|| "-".to_string(), |t| format!("{t:.1e}"));
                let status = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                    Status::Error => "ERROR",
                };
                eprintln!(
                    "{status:<5} {:<11} metric {metric:<10} tol {tolerance:<8} {:>8.3}s  {}",
                    r.check.name(),
                    r.seconds,
                    r.detail
                );
            }
            if to_stdout {
                println!("{}", serde_json::to_string_pretty(&summary)?);
            }
            return Ok(if summary.all_pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn describe(g: &Graph) {
    let regular = certify_regular(g);
    println!("vertices {}", g.n());
    println!("edges {}", g.edge_count());
    println!("betti {}", g.betti_number());
    match regular {
        Ok(cert) => {
            println!("degree {}", cert.degree);
            println!("bipartite {}", cert.bipartite);
        }
        Err(_) => println!("degree irregular"),
    }
    let loops = (0..g.n()).any(|v| !Zero::is_zero(&g.adj(v, v)));
    if loops {
        println!("loops yes");
    }
}
