// Thin wrapper over nalgebra's symmetric eigensolver that restores ascending
// order and stores eigenvectors as rows.

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::Mat;

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    /// Row `i` is the unit eigenvector for `values[i]`.
    pub vectors: Mat<T>,
}

pub fn symmetric_eigen<T: Real>(a: &Mat<T>) -> Result<SymmetricEigen<T>> {
    let (values, vectors) = decompose(a, true)?;
    Ok(SymmetricEigen { values, vectors: vectors.expect("vectors requested") })
}

/// Eigenvalues only, ascending; skips the O(n³) accumulation of the
/// orthogonal factor.
pub fn symmetric_eigenvalues<T: Real>(a: &Mat<T>) -> Result<Vec<T>> {
    decompose(a, false).map(|(v, _)| v)
}

fn decompose<T: Real>(a: &Mat<T>, want_vectors: bool) -> Result<(Vec<T>, Option<Mat<T>>)> {
    assert!(a.is_square(), "eigendecomposition needs a square matrix");
    let n = a.rows();
    if n == 0 {
        return Ok((Vec::new(), want_vectors.then(|| Mat::zeros(0, 0))));
    }
    let (d, w) = T::symmetric_eigen_raw(n, a.as_slice(), want_vectors);
    if d.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigensolverFailure(n));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = w.map(|w| {
        let mut out = Vec::with_capacity(n * n);
        for &i in &order {
            out.extend_from_slice(&w[i * n..(i + 1) * n]);
        }
        Mat::from_vec(n, n, out)
    });
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cyclic Jacobi rotations: slow but independent of the QL path.
    fn jacobi_eigenvalues(a: &Mat<f64>) -> Vec<f64> {
        let n = a.rows();
        let mut m = a.clone();
        for _ in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| m[(i, j)] * m[(i, j)])
                .sum();
            if off < 1e-26 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if m[(p, q)].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * m[(p, q)]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let mkp = m[(k, p)];
                        let mkq = m[(k, q)];
                        m[(k, p)] = c * mkp - s * mkq;
                        m[(k, q)] = s * mkp + c * mkq;
                    }
                    for k in 0..n {
                        let mpk = m[(p, k)];
                        let mqk = m[(q, k)];
                        m[(p, k)] = c * mpk - s * mqk;
                        m[(q, k)] = s * mpk + c * mqk;
                    }
                }
            }
        }
        let mut v = m.diagonal();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    fn random_symmetric(n: usize, seed: u64) -> Mat<f64> {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x = next();
                a[(i, j)] = x;
                a[(j, i)] = x;
            }
        }
        a
    }

    #[test]
    fn matches_jacobi_on_random_matrices() {
        for (n, seed) in [(1, 1), (2, 2), (5, 3), (17, 4), (40, 5)] {
            let a = random_symmetric(n, seed);
            let ql = symmetric_eigen(&a).unwrap();
            let jac = jacobi_eigenvalues(&a);
            for (x, y) in ql.values.iter().zip(&jac) {
                assert!((x - y).abs() < 1e-10, "n={n}: {x} vs {y}");
            }
            let only = symmetric_eigenvalues(&a).unwrap();
            for (x, y) in only.iter().zip(&ql.values) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn residuals_and_orthonormality() {
        let a = random_symmetric(30, 9);
        let eig = symmetric_eigen(&a).unwrap();
        let v = &eig.vectors;
        let norm = a.frobenius_norm();
        for (i, &lam) in eig.values.iter().enumerate() {
            let x = v.row(i);
            let mut res = 0.0f64;
            for r in 0..30 {
                let ax: f64 = (0..30).map(|c| a[(r, c)] * x[c]).sum();
                res = res.max((ax - lam * x[r]).abs());
            }
            assert!(res <= 1e-10 * norm, "residual {res}");
        }
        let gram = v.matmul(&v.transpose());
        assert!(gram.max_abs_diff(&Mat::identity(30)) < 1e-12);
    }

    #[test]
    fn single_precision_runs() {
        let a = random_symmetric(12, 21);
        let a32 = a.map(|&x| x as f32);
        let v32 = symmetric_eigenvalues(&a32).unwrap();
        let v64 = jacobi_eigenvalues(&a);
        for (x, y) in v32.iter().zip(&v64) {
            assert!((f64::from(*x) - y).abs() < 1e-4);
        }
    }
}
