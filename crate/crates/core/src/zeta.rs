//! Ihara–Bass determinant, zeta series from cycle counts, and the theta-series
//! coefficients of LPS graphs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::chebyshev::ChebyshevCache;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lps::LpsParams;
use crate::nbt::ClosedWalkCounts;
use crate::oracle::{count_reduced_cycles_bf, OracleOptions};
use crate::scalar::rational_to_f64;
use crate::spectral::SpectralData;

pub use crate::{FloatSeries, RationalSeries};

fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// `Z_G(u)^{-1} = (1−u²)^{r−1} · det(I − uA + u²(D−I))`, with the determinant
/// polynomial known exactly through degree `known_through`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaReciprocal {
    pub betti_r: i64,
    pub det_poly: Vec<BigInt>,
    /// Full degree `2n` of the determinant.
    degree: usize,
    known_through: usize,
}

impl ZetaReciprocal {
    /// True when `det_poly` is the whole determinant (degree `2n`).
    pub fn is_complete(&self) -> bool {
        self.known_through >= self.degree
    }

    pub fn known_through(&self) -> usize {
        self.known_through
    }

    fn check_order(&self, order: usize) -> Result<()> {
        if !self.is_complete() && order > self.known_through {
            return Err(Error::InvalidArgument(format!(
                "determinant known through degree {}, asked for {order}",
                self.known_through
            )));
        }
        Ok(())
    }

    pub fn det_series(&self, order: usize) -> Result<RationalSeries> {
        self.check_order(order)?;
        Ok(RationalSeries::new(self.det_poly.iter().cloned().map(rat).collect(), order))
    }

    /// `Z_G(u)^{-1}` through degree `order`.
    pub fn reciprocal_series(&self, order: usize) -> Result<RationalSeries> {
        let one_minus_u2 = RationalSeries::new(vec![rat(1), rat(0), rat(-1)], order);
        Ok(&one_minus_u2.powi(self.betti_r - 1)? * &self.det_series(order)?)
    }

    pub fn zeta_series(&self, order: usize) -> Result<RationalSeries> {
        self.reciprocal_series(order)?.inverse()
    }

    /// `u Z'(u)/Z(u) = −u (log Z^{-1})'`, whose coefficients are the `N_m`.
    pub fn log_derivative_u(&self, order: usize) -> Result<RationalSeries> {
        let log = self.reciprocal_series(order)?.log()?;
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend((-&log.derivative()).coeffs().iter().cloned());
        Ok(RationalSeries::new(coeffs, order))
    }
}

fn det_matrix_at(g: &Graph, u: i64) -> Vec<Vec<BigInt>> {
    let n = g.n();
    let u = BigInt::from(u);
    let u2 = &u * &u;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = BigInt::from(g.adj(i, j));
                    let mut v = -&u * a;
                    if i == j {
                        v += 1;
                        v += &u2 * (BigInt::from(g.degree(i)) - 1);
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Monomial coefficients of the interpolating polynomial through
/// `(xs[i], ys[i])`, via Newton divided differences.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> Vec<BigRational> {
    let k = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().cloned().map(rat).collect();
    for level in 1..k {
        for i in (level..k).rev() {
            let num = &dd[i] - &dd[i - 1];
            dd[i] = num / rat(xs[i] - xs[i - level]);
        }
    }
    // Horner on the Newton form
    let mut poly: Vec<BigRational> = vec![dd[k - 1].clone()];
    for i in (0..k - 1).rev() {
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * rat(xs[i]);
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}

/// Exact reciprocal zeta polynomial, from `2n+1` integer evaluations of the
/// determinant.
pub fn ihara_bass_reciprocal(g: &Graph) -> Result<ZetaReciprocal> {
    let n = g.n();
    let degree = 2 * n;
    let xs: Vec<i64> = (0..=degree as i64).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 }).collect();
    let ys: Vec<BigInt> = xs.iter().map(|&u| bareiss_det(det_matrix_at(g, u))).collect();
    let coeffs = interpolate(&xs, &ys);
    let mut det_poly = Vec::with_capacity(degree + 1);
    for c in coeffs.into_iter().take(degree + 1) {
        if !c.is_integer() {
            return Err(Error::InvalidArgument("determinant interpolation left a fraction".into()));
        }
        det_poly.push(c.to_integer());
    }
    det_poly.resize(degree + 1, BigInt::zero());
    Ok(ZetaReciprocal { betti_r: g.betti_number(), det_poly, degree, known_through: degree })
}

type IntSeries = Vec<BigInt>;

fn series_mul_into(acc: &mut IntSeries, a: &IntSeries, b: &IntSeries, sign: i8) {
    let m = acc.len();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().take(m - i).enumerate() {
            if y.is_zero() {
                continue;
            }
            if sign > 0 {
                acc[i + j] += x * y;
            } else {
                acc[i + j] -= x * y;
            }
        }
    }
}

/// Inverse of an integer series with constant term 1.
fn unit_inverse(a: &IntSeries) -> IntSeries {
    let m = a.len();
    let mut out: IntSeries = vec![BigInt::zero(); m];
    out[0] = BigInt::one();
    for k in 1..m {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            if !a[j].is_zero() {
                acc += &a[j] * &out[k - j];
            }
        }
        out[k] = -acc;
    }
    out
}

/// The determinant polynomial through degree `order` only, by elimination
/// over `Z[u]/(u^{order+1})`. Every pivot is `1 + O(u)`, so no fractions or
/// pivoting arise; cost is `O(n³ order²)` rather than `O(n⁴)` evaluations.
pub fn ihara_bass_truncated(g: &Graph, order: usize) -> ZetaReciprocal {
    let n = g.n();
    let len = order + 1;
    let mut a: Vec<Vec<IntSeries>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = vec![BigInt::zero(); len];
                    if len > 1 {
                        s[1] = -BigInt::from(g.adj(i, j));
                    }
                    if i == j {
                        s[0] = BigInt::one();
                        if len > 2 {
                            s[2] = BigInt::from(g.degree(i)) - 1;
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    let mut det: IntSeries = vec![BigInt::zero(); len];
    det[0] = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        let mut next = vec![BigInt::zero(); len];
        series_mul_into(&mut next, &det, &pivot, 1);
        det = next;
        let inv = unit_inverse(&pivot);
        let row_k: Vec<IntSeries> = a[k][k + 1..]
            .iter()
            .map(|r| {
                if r.iter().all(Zero::is_zero) {
                    return r.clone();
                }
                let mut s = vec![BigInt::zero(); len];
                series_mul_into(&mut s, r, &inv, 1);
                s
            })
            .collect();
        for i in k + 1..n {
            let factor = a[i][k].clone();
            if factor.iter().all(Zero::is_zero) {
                continue;
            }
            for (off, r) in row_k.iter().enumerate() {
                if r.iter().all(Zero::is_zero) {
                    continue;
                }
                let j = k + 1 + off;
                let mut entry = std::mem::take(&mut a[i][j]);
                series_mul_into(&mut entry, &factor, r, -1);
                a[i][j] = entry;
            }
        }
    }
    ZetaReciprocal { betti_r: g.betti_number(), det_poly: det, degree: 2 * n, known_through: order }
}

/// `Π_λ (1 − λu + qu²)^{m_λ}` from the spectrum, full degree `2n`.
pub fn det_poly_from_spectrum(sd: &SpectralData<f64>) -> Vec<f64> {
    let q = sd.q() as f64;
    let mut poly = vec![1.0];
    for c in sd.clusters() {
        for _ in 0..c.multiplicity {
            let mut next = vec![0.0; poly.len() + 2];
            for (d, &x) in poly.iter().enumerate() {
                next[d] += x;
                next[d + 1] -= c.lambda * x;
                next[d + 2] += q * x;
            }
            poly = next;
        }
    }
    poly
}

/// Exact version of [`det_poly_from_spectrum`] when every eigenvalue is an
/// integer.
pub fn det_poly_integral_spectrum(sd: &SpectralData<f64>) -> Option<Vec<BigInt>> {
    let q = BigInt::from(sd.q());
    let mut poly = vec![BigInt::one()];
    for c in sd.clusters() {
        if c.lambda.fract() != 0.0 {
            return None;
        }
        let lam = BigInt::from(c.lambda as i64);
        for _ in 0..c.multiplicity {
            let mut next = vec![BigInt::zero(); poly.len() + 2];
            for (d, x) in poly.iter().enumerate() {
                next[d] += x;
                next[d + 1] -= &lam * x;
                next[d + 2] += &q * x;
            }
            poly = next;
        }
    }
    Some(poly)
}

/// `exp(Σ_{m ≤ M} N_m u^m / m)`; `counts[0]` is `N_1`.
pub fn zeta_series_from_counts(counts: &[BigInt], order: usize) -> RationalSeries {
    let mut coeffs = vec![BigRational::zero()];
    for (i, c) in counts.iter().take(order).enumerate() {
        coeffs.push(BigRational::new(c.clone(), BigInt::from(i + 1)));
    }
    RationalSeries::new(coeffs, order).exp().expect("zero constant term")
}

/// Largest coefficient gap between the count-side zeta series (brute-force
/// `N_m`) and the inverse of the determinant side, through degree `order`.
pub fn verify_ihara_bass(g: &Graph, order: usize, opts: &OracleOptions) -> Result<BigRational> {
    let counts: Vec<BigInt> =
        (1..=order).map(|m| count_reduced_cycles_bf(g, m, opts).map(BigInt::from)).collect::<Result<_>>()?;
    verify_ihara_bass_with_counts(g, &counts, order)
}

pub fn verify_ihara_bass_with_counts(g: &Graph, counts: &[BigInt], order: usize) -> Result<BigRational> {
    let from_counts = zeta_series_from_counts(counts, order);
    let from_det = ihara_bass_reciprocal(g)?.zeta_series(order)?;
    Ok((0..=order).map(|k| (from_counts.coeff(k) - from_det.coeff(k)).abs()).max().unwrap_or_else(BigRational::zero))
}

/// `C(p^m) = ((1 + (p/q)^m)/2) · (4/(q(q²−1))) · (p^{m+1}−1)/(p−1)`.
pub fn eisenstein_c(p: u64, q: u64, m: usize) -> Result<BigRational> {
    let params = LpsParams::new(p, q)?;
    Ok(eisenstein_c_for(&params, m))
}

pub fn eisenstein_c_for(params: &LpsParams, m: usize) -> BigRational {
    let (p, q) = (params.p, params.q);
    let chi = if params.legendre_pq == -1 && m % 2 == 1 { 0 } else { 1 };
    if chi == 0 {
        return BigRational::zero();
    }
    let p_big = BigInt::from(p);
    let geometric = (num_traits::pow(p_big.clone(), m + 1) - 1) / (p_big - 1);
    BigRational::new(BigInt::from(4) * geometric, BigInt::from(q * (q * q - 1)))
}

/// Closed-walk counts at the identity vertex, enough for `(2/n) Tr 𝕋_m`
/// since Cayley graphs are vertex-transitive.
pub fn lps_walk_counts(g: &Graph, m_max: usize) -> Result<ClosedWalkCounts> {
    let cert = crate::graph::certify_regular(g)?;
    ClosedWalkCounts::compute_at(g, &cert, &[0], m_max)
}

/// `(2/n) Tr 𝕋_m = 2 Σ_{0 ≤ r ≤ m/2} f_{m−2r}` from counts at a single vertex.
pub fn theta_coefficient(counts: &ClosedWalkCounts, m: usize) -> BigInt {
    let per_vertex = counts.trace_t_tilde(m);
    BigInt::from(2) * per_vertex / BigInt::from(counts.vertices().len())
}

/// `a(p^m) = (2/n) Tr 𝕋_m − C(p^m)` for `m = 0..=m_max`.
pub fn cusp_coefficients(g: &Graph, params: &LpsParams, m_max: usize) -> Result<Vec<BigRational>> {
    check_lps_graph(g, params)?;
    let counts = lps_walk_counts(g, m_max)?;
    Ok((0..=m_max).map(|m| rat(theta_coefficient(&counts, m)) - eisenstein_c_for(params, m)).collect())
}

pub fn cusp_coefficient(g: &Graph, params: &LpsParams, m: usize) -> Result<BigRational> {
    Ok(cusp_coefficients(g, params, m)?.pop().expect("nonempty"))
}

fn check_lps_graph(g: &Graph, params: &LpsParams) -> Result<()> {
    if g.n() != params.expected_n {
        return Err(Error::GroupSizeMismatch { expected: params.expected_n, found: g.n() });
    }
    let cert = crate::graph::certify_regular(g)?;
    if cert.q != params.p {
        return Err(Error::InvalidArgument(format!("graph is {}-regular, expected {}", cert.degree, params.p + 1)));
    }
    Ok(())
}

/// `a(p^m) / (2 p^{m/2})` in floating point.
pub fn normalized_cusp(a: &BigRational, p: u64, m: usize) -> f64 {
    rational_to_f64(a) / (2.0 * (p as f64).powf(m as f64 / 2.0))
}

/// `(1/n) Σ_{|λ|<2√p} m_λ U_m(λ/2√p)`, the spectral form of
/// [`normalized_cusp`].
pub fn normalized_cusp_spectral(sd: &SpectralData<f64>, m: usize) -> f64 {
    let (principal, _) = sd.split_principal_singular();
    let total: f64 =
        principal.iter().map(|c| c.multiplicity as f64 * *ChebyshevCache::new(sd.scaled(c), m).u(m as i64)).sum();
    total / sd.n() as f64
}

/// `Σ_{|λ|<2√p} m_λ / (n sin θ_λ)`, a uniform bound on the normalized cusp
/// coefficients.
pub fn cusp_bound(sd: &SpectralData<f64>) -> f64 {
    let (principal, _) = sd.split_principal_singular();
    principal.iter().map(|c| c.multiplicity as f64 / c.theta.re.sin()).sum::<f64>() / sd.n() as f64
}

/// Both sides of the generating-function identity for `φ(t) = Σ a(p^m)/(2p^{m/2}) t^m`.
#[derive(Clone, Debug)]
pub struct PhiSeries {
    pub spectral: FloatSeries,
    pub closed_form: FloatSeries,
    /// Number of eigenvalues with `|λ| < 2√p`, with multiplicity.
    pub l: usize,
}

impl PhiSeries {
    pub fn max_discrepancy(&self) -> f64 {
        self.spectral.max_abs_diff(&self.closed_form)
    }
}

/// `t F(t)` through degree `order`.
fn t_f_series(p: f64, bipartite: bool, order: usize) -> FloatSeries {
    let mut c = vec![0.0; order + 1];
    if bipartite {
        for j in 1..=order / 2 {
            c[2 * j] = -2.0 * (p.powi(j as i32) + p.powi(-(j as i32)));
        }
    } else {
        for (j, cj) in c.iter_mut().enumerate().skip(1) {
            let h = p.powf(j as f64 / 2.0);
            *cj = -(h + 1.0 / h);
        }
    }
    FloatSeries::new(c, order)
}

/// Bracket in `nφ(t)(1 − t²) = l + (t/√p)(Z'/Z)(t/√p) − (p−1)nt²/(p−t²) + tF(t)`
/// with the `Z'/Z` term supplied.
fn phi_from_log_derivative(
    l: usize,
    n: usize,
    p: f64,
    bipartite: bool,
    log_derivative: &FloatSeries,
    order: usize,
) -> FloatSeries {
    let mut bracket = vec![0.0; order + 1];
    bracket[0] = l as f64;
    for (k, b) in bracket.iter_mut().enumerate() {
        *b += log_derivative.coeff(k) * p.powf(-(k as f64) / 2.0);
        if k >= 2 && k % 2 == 0 {
            *b -= (p - 1.0) * n as f64 * p.powi(-((k / 2) as i32));
        }
    }
    let bracket = &FloatSeries::new(bracket, order) + &t_f_series(p, bipartite, order);
    let geometric = FloatSeries::new((0..=order).map(|k| if k % 2 == 0 { 1.0 } else { 0.0 }).collect(), order);
    (&bracket * &geometric).scale(&(1.0 / n as f64))
}

/// Spectral-side and closed-form `φ(t)` through degree `order`. The
/// closed form takes `Z'/Z` from the truncated determinant.
pub fn phi_series(g: &Graph, params: &LpsParams, sd: &SpectralData<f64>, order: usize) -> Result<PhiSeries> {
    let p = params.p;
    let n = g.n();
    let cusp = cusp_coefficients(g, params, order)?;
    let spectral = FloatSeries::new(cusp.iter().enumerate().map(|(m, a)| normalized_cusp(a, p, m)).collect(), order);
    let log_derivative = ihara_bass_truncated(g, order).log_derivative_u(order)?.to_f64();
    let l = sd.principal_count();
    let closed_form = phi_from_log_derivative(l, n, p as f64, params.bipartite_expected(), &log_derivative, order);
    Ok(PhiSeries { spectral, closed_form, l })
}

/// Closed-form `φ(t)` at a point `0 < t < 1`, with `Z'/Z` from the spectrum.
pub fn phi_closed_form_at(sd: &SpectralData<f64>, bipartite: bool, t: f64) -> f64 {
    let p = sd.q() as f64;
    let n = sd.n() as f64;
    let u = t / p.sqrt();
    let mut u_log_deriv = (p - 1.0) * n * u * u / (1.0 - u * u);
    for c in sd.clusters() {
        let lam = c.lambda;
        u_log_deriv -= c.multiplicity as f64 * (-lam * u + 2.0 * p * u * u) / (1.0 - lam * u + p * u * u);
    }
    let t2 = t * t;
    let t_f = if bipartite {
        -2.0 * (p * t2 / (1.0 - p * t2) + (t2 / p) / (1.0 - t2 / p))
    } else {
        let s = p.sqrt();
        -(s * t / (1.0 - s * t) + (t / s) / (1.0 - t / s))
    };
    let l = sd.principal_count() as f64;
    let bracket = l + u_log_deriv - (p - 1.0) * n * t2 / (p - t2) + t_f;
    bracket / (n * (1.0 - t2))
}

/// `|(t−1) φ(t)|` at `t = 1 − ε` and the fitted log–log slope in `ε`.
pub fn phi_residue_profile(sd: &SpectralData<f64>, bipartite: bool, eps: &[f64]) -> (Vec<f64>, f64) {
    let values: Vec<f64> = eps.iter().map(|&e| ((-e) * phi_closed_form_at(sd, bipartite, 1.0 - e)).abs()).collect();
    let xs: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.max(f64::MIN_POSITIVE).ln()).collect();
    (values, least_squares_slope(&xs, &ys))
}

pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `Σ_k |c_k|` for the integer coefficients, to size float tolerances.
pub fn coefficient_scale(poly: &[BigInt]) -> f64 {
    poly.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, certify_regular, named_graph};
    use crate::spectral::eigendecompose;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bareiss_small() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(3), BigInt::from(0), BigInt::from(2)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-7));
    }

    #[test]
    fn k4_factorization() {
        let g = named_graph("k4").unwrap();
        let z = ihara_bass_reciprocal(&g).unwrap();
        assert_eq!(z.betti_r, 3);
        // (1 − 3u + 2u²)(1 + u + 2u²)³
        let lin = [vec![1, -3, 2], vec![1, 1, 2], vec![1, 1, 2], vec![1, 1, 2]];
        let mut want = vec![BigInt::one()];
        for f in lin {
            let mut next = vec![BigInt::zero(); want.len() + 2];
            for (i, x) in want.iter().enumerate() {
                for (j, &y) in f.iter().enumerate() {
                    next[i + j] += x * y;
                }
            }
            want = next;
        }
        assert_eq!(z.det_poly, want);
    }

    #[test]
    fn tree_has_trivial_zeta() {
        let g = build_graph(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let z = ihara_bass_reciprocal(&g).unwrap();
        assert_eq!(z.betti_r, 0);
        assert_eq!(z.zeta_series(8).unwrap(), RationalSeries::one(8));
    }

    #[test]
    fn k3_counts_from_determinant() {
        let g = named_graph("k3").unwrap();
        let z = ihara_bass_reciprocal(&g).unwrap();
        let nm = z.log_derivative_u(6).unwrap();
        assert_eq!(nm.coeff(3), q(6, 1));
        assert_eq!(nm.coeff(6), q(6, 1));
        assert_eq!(nm.coeff(1), q(0, 1));
    }

    #[test]
    fn series_from_counts() {
        let zero = vec![BigInt::zero(); 5];
        assert_eq!(zeta_series_from_counts(&zero, 5), RationalSeries::one(5));
        let pet: Vec<BigInt> = [0, 0, 0, 0, 120, 120].iter().map(|&x| BigInt::from(x)).collect();
        let z = zeta_series_from_counts(&pet, 6);
        assert_eq!(z.coeff(4), q(0, 1));
        assert_eq!(z.coeff(5), q(24, 1));
        assert_eq!(z.coeff(6), q(20, 1));
        let k4: Vec<BigInt> = [0, 0, 24].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(zeta_series_from_counts(&k4, 3).coeff(3), q(8, 1));
    }

    #[test]
    fn truncated_matches_full() {
        for name in ["k4", "petersen", "k33", "cube"] {
            let g = named_graph(name).unwrap();
            let full = ihara_bass_reciprocal(&g).unwrap();
            let part = ihara_bass_truncated(&g, 7);
            assert_eq!(&full.det_poly[..8], &part.det_poly[..]);
            assert!(part.reciprocal_series(8).is_err());
        }
    }

    #[test]
    fn irregular_graph_cross_check() {
        // a triangle with a pendant path and a doubled edge
        let g = build_graph(5, &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 1), (3, 4, 2)]).unwrap();
        assert_eq!(verify_ihara_bass(&g, 9, &OracleOptions::default()).unwrap(), BigRational::zero());
    }

    #[test]
    fn spectrum_factorization_exact_for_integral_spectra() {
        for name in ["k4", "petersen", "k33", "cube"] {
            let g = named_graph(name).unwrap();
            let cert = certify_regular(&g).unwrap();
            let sd = eigendecompose::<f64>(&g, &cert, None).unwrap();
            let z = ihara_bass_reciprocal(&g).unwrap();
            assert_eq!(det_poly_integral_spectrum(&sd).unwrap(), z.det_poly);
            let float = det_poly_from_spectrum(&sd);
            let scale = coefficient_scale(&z.det_poly);
            for (a, b) in float.iter().zip(&z.det_poly) {
                assert!((a - b.to_f64().unwrap()).abs() <= 1e-9 * scale);
            }
        }
    }

    #[test]
    fn eisenstein_values() {
        assert_eq!(eisenstein_c(5, 13, 2).unwrap(), q(31, 546));
        assert_eq!(eisenstein_c(5, 13, 1).unwrap(), q(0, 1));
        assert_eq!(eisenstein_c(13, 5, 3).unwrap(), q(0, 1));
        assert!(eisenstein_c(4, 13, 1).is_err());
    }

    #[test]
    fn slope_of_line() {
        let xs = [0.0, 1.0, 2.0];
        let ys = [1.0, 3.0, 5.0];
        assert!((least_squares_slope(&xs, &ys) - 2.0).abs() < 1e-15);
    }
}
