//! Reduced-path matrices `A_m`, reduced-cycle matrices `M_m`, the sums `𝕋_m`,
//! and their spectral counterparts `a_m`, `s_m`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::chebyshev::{parity_indicator, ChebyshevCache};
use crate::error::{Error, Result};
use crate::graph::{Graph, RegularityCertificate};
use crate::linalg::Mat;
use crate::scalar::Real;
use crate::spectral::SpectralData;

pub type IntMat = Mat<BigInt>;

/// `(X·A)` for a dense `X` and the sparse adjacency of `g`.
fn mul_adjacency(x: &IntMat, g: &Graph) -> IntMat {
    let n = g.n();
    let mut out = IntMat::zeros(x.rows(), n);
    for i in 0..x.rows() {
        let row = x.row(i);
        let dst = out.row_mut(i);
        for (k, xik) in row.iter().enumerate() {
            if xik.is_zero() {
                continue;
            }
            for &(j, mult) in g.neighbors(k) {
                if mult == 1 {
                    dst[j] += xik;
                } else {
                    dst[j] += xik * mult;
                }
            }
        }
    }
    out
}

fn adjacency_int(g: &Graph) -> IntMat {
    Mat::from_fn(g.n(), g.n(), |i, j| BigInt::from(g.adj(i, j)))
}

/// Forward sweep of the `A_m` recurrence holding `(A_{m−1}, A_m)`.
#[derive(Clone, Debug)]
pub struct ExactMatrixSeq<'g> {
    graph: &'g Graph,
    q: u64,
    m: usize,
    prev: IntMat,
    curr: IntMat,
}

impl<'g> ExactMatrixSeq<'g> {
    /// Starts at `m = 0` with `curr = I`.
    pub fn new(graph: &'g Graph, cert: &RegularityCertificate) -> Self {
        let n = graph.n();
        Self { graph, q: cert.q, m: 0, prev: IntMat::zeros(n, n), curr: IntMat::identity(n) }
    }

    pub fn index(&self) -> usize {
        self.m
    }

    pub fn current(&self) -> &IntMat {
        &self.curr
    }

    pub fn previous(&self) -> &IntMat {
        &self.prev
    }

    /// Moves to `A_{m+1}`.
    pub fn advance(&mut self) -> &IntMat {
        let next = match self.m {
            0 => adjacency_int(self.graph),
            m => {
                let mut next = mul_adjacency(&self.curr, self.graph);
                let c = if m == 1 { BigInt::from(self.q + 1) } else { BigInt::from(self.q) };
                next.axpy(&-c, &self.prev);
                next
            }
        };
        self.prev = std::mem::replace(&mut self.curr, next);
        self.m += 1;
        &self.curr
    }
}

/// One step of [`ReducedSweep`].
#[derive(Clone, Debug)]
pub struct SweepItem {
    pub m: usize,
    pub a: IntMat,
    /// `M_m`; equals `I` at `m = 0` by convention.
    pub reduced: IntMat,
    pub t_tilde: IntMat,
}

/// Yields `A_m`, `M_m` and `𝕋_m` for `m = 0, 1, 2, …` from one pass of the
/// recurrence, keeping parity-split running sums.
pub struct ReducedSweep<'g> {
    seq: ExactMatrixSeq<'g>,
    q_minus_one: BigInt,
    /// Σ A_j over j ≥ 1 of each parity, up to the current index minus 2.
    lagged: [IntMat; 2],
    /// Σ A_j over j ≥ 0 of each parity, up to the current index.
    full: [IntMat; 2],
    started: bool,
}

impl<'g> ReducedSweep<'g> {
    pub fn new(graph: &'g Graph, cert: &RegularityCertificate) -> Self {
        let n = graph.n();
        Self {
            seq: ExactMatrixSeq::new(graph, cert),
            q_minus_one: BigInt::from(cert.q) - 1,
            lagged: [IntMat::zeros(n, n), IntMat::zeros(n, n)],
            full: [IntMat::zeros(n, n), IntMat::zeros(n, n)],
            started: false,
        }
    }
}

impl Iterator for ReducedSweep<'_> {
    type Item = SweepItem;

    fn next(&mut self) -> Option<SweepItem> {
        if self.started {
            // A_{m−1} becomes part of the lagged sum for index m+1
            let m_old = self.seq.index();
            if m_old >= 1 {
                let prev_idx = m_old - 1;
                if prev_idx >= 1 {
                    self.lagged[prev_idx % 2].axpy(&BigInt::one(), self.seq.previous());
                }
            }
            self.seq.advance();
        }
        self.started = true;
        let m = self.seq.index();
        let a = self.seq.current().clone();
        self.full[m % 2].axpy(&BigInt::one(), &a);
        let reduced = if m == 0 {
            a.clone()
        } else {
            let mut r = a.clone();
            r.axpy(&-self.q_minus_one.clone(), &self.lagged[m % 2]);
            r
        };
        Some(SweepItem { m, a, reduced, t_tilde: self.full[m % 2].clone() })
    }
}

/// Exact `A_m`.
pub fn a_matrix(g: &Graph, cert: &RegularityCertificate, m: usize) -> IntMat {
    let mut seq = ExactMatrixSeq::new(g, cert);
    while seq.index() < m {
        seq.advance();
    }
    seq.curr
}

/// Exact `M_m = A_m − (q−1) Σ_{k=1}^{⌊(m−1)/2⌋} A_{m−2k}`.
pub fn m_matrix(g: &Graph, cert: &RegularityCertificate, m: usize) -> Result<IntMat> {
    if m == 0 {
        return Err(Error::InvalidArgument("M_m needs m ≥ 1".into()));
    }
    Ok(ReducedSweep::new(g, cert).nth(m).expect("infinite sweep").reduced)
}

/// Exact `𝕋_m = Σ_{0 ≤ r ≤ m/2} A_{m−2r}`.
pub fn t_tilde_matrix(g: &Graph, cert: &RegularityCertificate, m: usize) -> IntMat {
    ReducedSweep::new(g, cert).nth(m).expect("infinite sweep").t_tilde
}

/// `N_m = Tr M_m`.
pub fn n_reduced(g: &Graph, cert: &RegularityCertificate, m: usize) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::InvalidArgument("N_m needs m ≥ 1".into()));
    }
    Ok(ClosedWalkCounts::compute(g, cert, m).n_reduced(m))
}

/// `f_{m,v} = (A_m)_{vv}`.
pub fn f_closed(g: &Graph, cert: &RegularityCertificate, m: usize, v: usize) -> Result<BigInt> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { index: v, n: g.n() });
    }
    Ok(ClosedWalkCounts::compute_at(g, cert, &[v], m)?.f(m, 0))
}

/// Diagonals of `A_0 … A_{m_max}`, computed one column at a time so memory
/// stays `O(n)` per vertex.
#[derive(Clone, Debug)]
pub struct ClosedWalkCounts {
    q: u64,
    vertices: Vec<usize>,
    /// `diag[m][i] = (A_m)_{v_i v_i}`.
    diag: Vec<Vec<BigInt>>,
    /// `Σ_i diag[m][i]`.
    traces: Vec<BigInt>,
}

impl ClosedWalkCounts {
    /// All vertices.
    pub fn compute(g: &Graph, cert: &RegularityCertificate, m_max: usize) -> Self {
        let all: Vec<usize> = (0..g.n()).collect();
        Self::compute_at(g, cert, &all, m_max).expect("vertices in range")
    }

    /// Only the listed vertices; `traces` then sums over those.
    pub fn compute_at(g: &Graph, cert: &RegularityCertificate, vertices: &[usize], m_max: usize) -> Result<Self> {
        let n = g.n();
        if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { index: v, n });
        }
        let mut diag = vec![Vec::with_capacity(vertices.len()); m_max + 1];
        for &v in vertices {
            let column = |x: &[BigInt]| -> Vec<BigInt> {
                let mut y = vec![BigInt::zero(); n];
                for (k, xk) in x.iter().enumerate() {
                    if xk.is_zero() {
                        continue;
                    }
                    for &(j, mult) in g.neighbors(k) {
                        if mult == 1 {
                            y[j] += xk;
                        } else {
                            y[j] += xk * mult;
                        }
                    }
                }
                y
            };
            let mut prev: Vec<BigInt> = vec![BigInt::zero(); n];
            let mut curr: Vec<BigInt> = vec![BigInt::zero(); n];
            curr[v] = BigInt::one();
            diag[0].push(BigInt::one());
            for m in 1..=m_max {
                let mut next = column(&curr);
                if m >= 2 {
                    let c = if m == 2 { cert.q + 1 } else { cert.q };
                    for (dst, p) in next.iter_mut().zip(&prev) {
                        if !p.is_zero() {
                            *dst -= p * c;
                        }
                    }
                }
                diag[m].push(next[v].clone());
                prev = std::mem::replace(&mut curr, next);
            }
        }
        let traces = diag.iter().map(|d| d.iter().sum()).collect();
        Ok(Self { q: cert.q, vertices: vertices.to_vec(), diag, traces })
    }

    pub fn m_max(&self) -> usize {
        self.diag.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// `(A_m)_{vv}` for the `i`-th tracked vertex.
    pub fn f(&self, m: usize, i: usize) -> BigInt {
        self.diag[m][i].clone()
    }

    /// `Tr A_m` (restricted to the tracked vertices).
    pub fn trace_a(&self, m: usize) -> &BigInt {
        &self.traces[m]
    }

    /// `N_m`, or the partial trace of `M_m` over tracked vertices.
    pub fn n_reduced(&self, m: usize) -> BigInt {
        let mut total = self.traces[m].clone();
        let lagged: BigInt = (1..m.saturating_sub(1)).filter(|j| j % 2 == m % 2).map(|j| &self.traces[j]).sum();
        total -= lagged * (BigInt::from(self.q) - 1);
        total
    }

    /// `Tr 𝕋_m`.
    pub fn trace_t_tilde(&self, m: usize) -> BigInt {
        (0..=m).filter(|j| j % 2 == m % 2).map(|j| &self.traces[j]).sum()
    }

    /// `N_1 … N_{m_max}` (index 0 holds `N_1`).
    pub fn n_sequence(&self) -> Vec<BigInt> {
        (1..=self.m_max()).map(|m| self.n_reduced(m)).collect()
    }
}

pub fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

pub fn int_mat_to<T: Real>(x: &IntMat) -> Mat<T> {
    x.map(|v| T::lit(bigint_to_f64(v)))
}

fn q_pow_half<T: Real>(q: u64, m: usize) -> T {
    T::from_u64(q).expect("q fits").sqrt().powi(m as i32)
}

/// `2q^{m/2} T_m(A/2√q) + e_m(q−1) I`, assembled from the spectrum.
pub fn m_matrix_chebyshev<T: Real>(sd: &SpectralData<T>, m: usize) -> Result<Mat<T>> {
    let scale = T::lit(2.0) * q_pow_half::<T>(sd.q(), m);
    let mut out = sd.spectral_sum(|c| Some(scale * *ChebyshevCache::new(sd.scaled(c), m).t(m)))?;
    if parity_indicator(m as u64) == 1 {
        out.add_diagonal(&T::from_u64(sd.q() - 1).expect("q fits"));
    }
    Ok(out)
}

/// `q^{m/2} U_m(A/2√q)`, the spectral form of `𝕋_m`.
pub fn t_tilde_chebyshev<T: Real>(sd: &SpectralData<T>, m: usize) -> Result<Mat<T>> {
    let scale = q_pow_half::<T>(sd.q(), m);
    sd.spectral_sum(|c| Some(scale * *ChebyshevCache::new(sd.scaled(c), m).u(m as i64)))
}

/// `a_m = Σ_{|λ|<2√q} T_m(λ/2√q) P_λ`.
pub fn principal_am<T: Real>(sd: &SpectralData<T>, m: usize) -> Result<Mat<T>> {
    sd.principal_sum(|c| *ChebyshevCache::new(sd.scaled(c), m).t(m))
}

/// `s_m = Σ_{|λ|<2√q} U_m(λ/2√q) P_λ`.
pub fn s_matrix<T: Real>(sd: &SpectralData<T>, m: usize) -> Result<Mat<T>> {
    sd.principal_sum(|c| *ChebyshevCache::new(sd.scaled(c), m).u(m as i64))
}

/// Checks that every singular cluster sits at `±(q+1)` or `±2√q`.
pub fn ensure_ramanujan<T: Real>(sd: &SpectralData<T>) -> Result<()> {
    let top = T::from_u64(sd.q() + 1).expect("q fits");
    let tol = sd.cluster_tol();
    let edge = sd.two_sqrt_q();
    for c in sd.clusters() {
        if sd.is_principal(c) {
            continue;
        }
        let a = c.lambda.abs();
        if (a - top).abs() >= tol && (a - edge).abs() >= tol {
            return Err(Error::NotRamanujan(c.lambda.to_f64().unwrap_or(f64::NAN)));
        }
    }
    Ok(())
}

/// `a_m` from the exact `M_m` with the singular part removed through the
/// closed forms `P_{q+1} = J/n` and `P_{−(q+1)} = ss^T/n` (`s` the
/// bipartition sign vector).
pub fn principal_am_recurrence<T: Real>(
    g: &Graph,
    cert: &RegularityCertificate,
    sd: &SpectralData<T>,
    m: usize,
) -> Result<Mat<T>> {
    if m == 0 {
        return Err(Error::InvalidArgument("a_m needs m ≥ 1".into()));
    }
    ensure_ramanujan(sd)?;
    let n = g.n();
    let reduced = m_matrix(g, cert, m)?;
    // 2q^{m/2} T_m(±(q+1)/2√q) = (±1)^m (q^m + 1)
    let qm1 = num_traits::pow(BigInt::from(cert.q), m) + 1;
    let signs = cert.signs(n);
    let e_term = BigInt::from(n as u64 * parity_indicator(m as u64) * (cert.q - 1));
    let nn = BigInt::from(n);
    let odd = m % 2 == 1;
    let numerator = Mat::from_fn(n, n, |i, j| {
        let mut v = &nn * &reduced[(i, j)] - &qm1;
        if let Some(s) = &signs {
            let sign = s[i] * s[j] * if odd { -1 } else { 1 };
            if sign > 0 {
                v -= &qm1;
            } else {
                v += &qm1;
            }
        }
        if i == j {
            v -= &e_term;
        }
        v
    });
    let denom = T::lit(2.0) * q_pow_half::<T>(cert.q, m) * T::from_usize(n).expect("small");
    let mut out = numerator.map(|v| T::lit(bigint_to_f64(v)) / denom);
    // 2q^{m/2} T_m(±1) P / (2q^{m/2}) = (±1)^m P at the tempered edge
    // for q = 1 the edge coincides with ±(q+1), already removed above
    let edge = sd.two_sqrt_q();
    let top = T::from_u64(cert.q + 1).expect("q fits");
    let tol = sd.cluster_tol();
    let at_edge = |c: &crate::spectral::Cluster<T>| {
        !sd.is_principal(c) && (c.lambda.abs() - edge).abs() < tol && (c.lambda.abs() - top).abs() >= tol
    };
    if sd.clusters().iter().any(at_edge) {
        let edge_part = sd.spectral_sum(|c| {
            if !at_edge(c) {
                return None;
            }
            Some(if c.lambda < T::zero() && odd { -T::one() } else { T::one() })
        })?;
        out = out.sub(&edge_part);
    }
    Ok(out)
}
