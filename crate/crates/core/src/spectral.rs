//! Distinct adjacency eigenvalues, spectral projections `P_λ` and spectral
//! angles `θ_λ = arccos(λ / 2√q)`.

use std::ops::Range;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::graph::{Graph, RegularityCertificate};
use crate::linalg::{symmetric_eigen, symmetric_eigenvalues, Mat};
use crate::scalar::Real;

/// Relative snapping radius: `1e−9`, or a few ulps for coarse scalar types.
fn precision_floor<T: Real>() -> T {
    T::lit(1e-9).max(T::epsilon() * T::lit(64.0))
}

#[derive(Clone, Debug)]
pub struct Cluster<T> {
    pub lambda: T,
    pub multiplicity: usize,
    pub theta: Complex<T>,
    /// Indices into the ascending eigenvalue list.
    range: Range<usize>,
}

impl<T: Real> Cluster<T> {
    pub fn indices(&self) -> Range<usize> {
        self.range.clone()
    }
}

#[derive(Clone, Debug)]
pub struct SpectralData<T> {
    q: u64,
    n: usize,
    cluster_tol: T,
    eigenvalues: Vec<T>,
    vectors: Option<Mat<T>>,
    clusters: Vec<Cluster<T>>,
}

/// Default clustering tolerance `1e−8 · (q+1)`.
pub fn default_cluster_tol<T: Real>(q: u64) -> T {
    T::lit(1e-8 * (q + 1) as f64)
}

/// Full symmetric eigendecomposition with clustering. `cluster_tol = None`
/// uses [`default_cluster_tol`].
pub fn eigendecompose<T: Real>(
    g: &Graph,
    cert: &RegularityCertificate,
    cluster_tol: Option<T>,
) -> Result<SpectralData<T>> {
    let eig = symmetric_eigen(&g.adjacency::<T>())?;
    SpectralData::from_parts(cert.q, eig.values, Some(eig.vectors), cluster_tol)
}

/// Eigenvalues and clusters only; projections are unavailable.
pub fn eigenvalue_spectrum<T: Real>(
    g: &Graph,
    cert: &RegularityCertificate,
    cluster_tol: Option<T>,
) -> Result<SpectralData<T>> {
    let values = symmetric_eigenvalues(&g.adjacency::<T>())?;
    SpectralData::from_parts(cert.q, values, None, cluster_tol)
}

/// `θ` with `cos θ = λ/(2√q)`, `0 ≤ Re θ ≤ π`. Outside the tempered range the
/// angle is `−i·t` (for `λ ≥ 2√q`) or `π − i·t` (for `λ ≤ −2√q`) with
/// `t = arccosh(|λ|/2√q) ≤ log √q`.
pub fn theta_of<T: Real>(lambda: T, q: u64) -> Result<Complex<T>> {
    let qf = T::from_u64(q).expect("q fits");
    let bound = qf + T::one();
    let slack = precision_floor::<T>() * bound;
    if lambda.abs() > bound + slack {
        return Err(Error::OutOfRange {
            lambda: lambda.to_f64().unwrap_or(f64::NAN),
            bound: bound.to_f64().unwrap_or(f64::NAN),
        });
    }
    let x = lambda / (T::lit(2.0) * qf.sqrt());
    let t_max = bound / (T::lit(2.0) * qf.sqrt());
    Ok(if x.abs() < T::one() {
        Complex::new(x.acos(), T::zero())
    } else if x >= T::one() {
        Complex::new(T::zero(), -x.min(t_max).acosh())
    } else {
        Complex::new(T::lit(std::f64::consts::PI), -(-x).min(t_max).acosh())
    })
}

impl<T: Real> SpectralData<T> {
    /// Groups ascending-sorted eigenvalues whose consecutive gaps are below
    /// `cluster_tol`.
    pub fn from_parts(
        q: u64,
        mut eigenvalues: Vec<T>,
        vectors: Option<Mat<T>>,
        cluster_tol: Option<T>,
    ) -> Result<Self> {
        let tol = cluster_tol.unwrap_or_else(|| default_cluster_tol(q));
        if !(tol > T::zero()) {
            return Err(Error::InvalidArgument("cluster tolerance must be positive".into()));
        }
        let n = eigenvalues.len();
        if eigenvalues.windows(2).any(|w| w[0] > w[1]) {
            // callers hand us eigensolver output; keep vectors aligned if we sort
            assert!(vectors.is_none(), "eigenvalues with vectors must arrive sorted");
            eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        }
        let mut ranges: Vec<Range<usize>> = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            if i == n || eigenvalues[i] - eigenvalues[i - 1] >= tol {
                if i < n {
                    let gap = eigenvalues[i] - eigenvalues[i - 1];
                    if gap < T::lit(10.0) * tol {
                        return Err(Error::ClusterAmbiguity {
                            gap: gap.to_f64().unwrap_or(f64::NAN),
                            tol: tol.to_f64().unwrap_or(f64::NAN),
                        });
                    }
                }
                ranges.push(start..i);
                start = i;
            }
        }
        let mut clusters = Vec::with_capacity(ranges.len());
        for range in ranges.into_iter().rev() {
            let count = T::from_usize(range.len()).expect("small");
            let mean = eigenvalues[range.clone()].iter().copied().sum::<T>() / count;
            let rounded = mean.round();
            let snap = precision_floor::<T>() * T::from_u64(q + 1).expect("q fits");
            let lambda = if (mean - rounded).abs() <= snap { rounded } else { mean };
            clusters.push(Cluster { lambda, multiplicity: range.len(), theta: theta_of(lambda, q)?, range });
        }
        Ok(Self { q, n, cluster_tol: tol, eigenvalues, vectors, clusters })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cluster_tol(&self) -> T {
        self.cluster_tol
    }

    /// Distinct eigenvalues, descending.
    pub fn clusters(&self) -> &[Cluster<T>] {
        &self.clusters
    }

    /// All eigenvalues, ascending, as computed.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn has_vectors(&self) -> bool {
        self.vectors.is_some()
    }

    pub fn two_sqrt_q(&self) -> T {
        T::lit(2.0) * T::from_u64(self.q).expect("q fits").sqrt()
    }

    /// `x_λ = λ / 2√q`.
    pub fn scaled(&self, c: &Cluster<T>) -> T {
        c.lambda / self.two_sqrt_q()
    }

    /// Tempered clusters: `|λ| < 2√q` strictly, with ties within the cluster
    /// tolerance going to the singular side.
    pub fn is_principal(&self, c: &Cluster<T>) -> bool {
        c.lambda.abs() < self.two_sqrt_q() - self.cluster_tol
    }

    /// `(principal, singular)` cluster lists.
    pub fn split_principal_singular(&self) -> (Vec<&Cluster<T>>, Vec<&Cluster<T>>) {
        self.clusters.iter().partition(|c| self.is_principal(c))
    }

    /// Multiplicity of the cluster within the clustering tolerance of
    /// `value`, or 0.
    pub fn multiplicity_near(&self, value: T) -> usize {
        self.clusters.iter().find(|c| (c.lambda - value).abs() < self.cluster_tol).map_or(0, |c| c.multiplicity)
    }

    /// `m_{2√q}`.
    pub fn multiplicity_at_two_sqrt_q(&self) -> usize {
        self.multiplicity_near(self.two_sqrt_q())
    }

    /// Number of eigenvalues with `|λ| < 2√q`, counted with multiplicity.
    pub fn principal_count(&self) -> usize {
        self.clusters.iter().filter(|c| self.is_principal(c)).map(|c| c.multiplicity).sum()
    }

    pub fn projector(&self, cluster: usize) -> Result<Mat<T>> {
        let c = &self.clusters[cluster];
        self.spectral_sum(|other| if std::ptr::eq(other, c) { Some(T::one()) } else { None })
    }

    /// `Σ_λ w(λ) P_λ` over clusters where `w` returns a weight.
    pub fn spectral_sum(&self, mut weight: impl FnMut(&Cluster<T>) -> Option<T>) -> Result<Mat<T>> {
        let v = self.vectors.as_ref().ok_or(Error::MissingEigenvectors)?;
        let n = self.n;
        let mut out = Mat::zeros(n, n);
        for c in &self.clusters {
            let Some(w) = weight(c) else { continue };
            if w == T::zero() {
                continue;
            }
            for idx in c.indices() {
                let x = v.row(idx);
                for i in 0..n {
                    let wi = w * x[i];
                    if wi == T::zero() {
                        continue;
                    }
                    let row = out.row_mut(i);
                    for (dst, &xj) in row.iter_mut().zip(x) {
                        *dst = *dst + wi * xj;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Σ_{|λ|<2√q} w(λ) P_λ`.
    pub fn principal_sum(&self, mut weight: impl FnMut(&Cluster<T>) -> T) -> Result<Mat<T>> {
        self.spectral_sum(|c| self.is_principal(c).then(|| weight(c)))
    }
}
