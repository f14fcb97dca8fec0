//! Scalar abstractions.
//!
//! Floating-point code (eigensolver, spectral calculus, limit sweeps) is
//! written against [`Real`]; truncated power series are written against
//! [`Coefficient`], which additionally admits exact rationals.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static {
    /// Lossless-enough conversion from a literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// Unordered eigenvalues of a symmetric row-major `n×n` matrix, and, if
    /// requested, the eigenvectors packed one per row.
    fn symmetric_eigen_raw(n: usize, data: &[Self], vectors: bool) -> (Vec<Self>, Option<Vec<Self>>);
}

macro_rules! real_impl {
    ($t:ty) => {
        impl Real for $t {
            fn symmetric_eigen_raw(n: usize, data: &[Self], vectors: bool) -> (Vec<Self>, Option<Vec<Self>>) {
                let m = nalgebra::DMatrix::<$t>::from_row_slice(n, n, data);
                if !vectors {
                    return (m.symmetric_eigenvalues().iter().copied().collect(), None);
                }
                let eig = m.symmetric_eigen();
                // nalgebra stores eigenvectors as columns in column-major order,
                // which is exactly one contiguous eigenvector per row here
                (eig.eigenvalues.iter().copied().collect(), Some(eig.eigenvectors.as_slice().to_vec()))
            }
        }
    };
}

real_impl!(f32);
real_impl!(f64);

/// Field element usable as a power-series coefficient.
pub trait Coefficient: Clone + PartialEq + Debug + Num + std::ops::Neg<Output = Self> {
    fn from_i64(k: i64) -> Self;
    fn from_bigint(k: &BigInt) -> Self;
    fn to_f64(&self) -> f64;
}

impl Coefficient for f64 {
    fn from_i64(k: i64) -> Self {
        k as f64
    }
    fn from_bigint(k: &BigInt) -> Self {
        k.to_f64().unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Coefficient for f32 {
    fn from_i64(k: i64) -> Self {
        k as f32
    }
    fn from_bigint(k: &BigInt) -> Self {
        k.to_f32().unwrap_or(f32::NAN)
    }
    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Coefficient for BigRational {
    fn from_i64(k: i64) -> Self {
        BigRational::from_integer(BigInt::from(k))
    }
    fn from_bigint(k: &BigInt) -> Self {
        BigRational::from_integer(k.clone())
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

/// Converts a big rational to the nearest-ish `f64`, surviving numerators and
/// denominators that individually overflow `f64`.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(a), Some(b)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if a.is_finite() && b.is_finite() {
            return a / b;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    // scale both down to ~60 significant bits
    let ns = (nb - 60).max(0) as usize;
    let ds = (db - 60).max(0) as usize;
    let a = (r.numer() >> ns).to_f64().unwrap_or(0.0);
    let b = (r.denom() >> ds).to_f64().unwrap_or(1.0);
    (a / b) * 2f64.powi((ns as i64 - ds as i64) as i32)
}
