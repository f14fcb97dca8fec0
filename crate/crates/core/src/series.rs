//! Truncated power series `c_0 + c_1 u + … + c_M u^M + O(u^{M+1})`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> TruncatedSeries<T> {
    /// Series known through degree `order`; `coeffs` is padded with zeros or
    /// truncated to fit.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// `c · u^k`.
    pub fn monomial(c: T, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order()))
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    /// `f(α u)`.
    pub fn scale_variable(&self, alpha: &T) -> Self {
        let mut power = T::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone() * power.clone());
            power = power * alpha.clone();
        }
        Self { coeffs }
    }

    /// `u · f(u)`, keeping the order.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = vec![T::zero()];
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        let order = self.order().saturating_sub(1);
        let coeffs = (1..=self.order().max(1)).map(|k| self.coeff(k) * T::from_i64(k as i64)).collect();
        Self::new(coeffs, order)
    }

    /// Antiderivative with zero constant term, one degree longer.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![T::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::from_i64(k as i64 + 1));
        }
        Self { coeffs }
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::SeriesConstantTerm("nonzero"));
        }
        let m = self.order();
        let mut out: Vec<T> = Vec::with_capacity(m + 1);
        out.push(T::one() / c0.clone());
        for k in 1..=m {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out.push(-acc / c0.clone());
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Formal logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SeriesConstantTerm("one"));
        }
        let m = self.order();
        if m == 0 {
            return Ok(Self::zero(0));
        }
        let quotient = self.derivative().div(&self.truncate(m - 1))?;
        Ok(quotient.integral())
    }

    /// Formal exponential of a series with constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesConstantTerm("zero"));
        }
        let m = self.order();
        let mut g: Vec<T> = Vec::with_capacity(m + 1);
        g.push(T::one());
        for k in 1..=m {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + T::from_i64(j as i64) * self.coeffs[j].clone() * g[k - j].clone();
            }
            g.push(acc / T::from_i64(k as i64));
        }
        Ok(Self { coeffs: g })
    }

    /// Integer power; negative exponents need an invertible constant term.
    pub fn powi(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn to_f64(&self) -> TruncatedSeries<f64> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(Coefficient::to_f64).collect() }
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let m = self.order().min(rhs.order());
        (0..=m).map(|k| (self.coeffs[k].clone() - rhs.coeffs[k].clone()).to_f64().abs()).fold(0.0, f64::max)
    }
}

impl<T: Coefficient> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn add(self, rhs: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        let m = self.order().min(rhs.order());
        let coeffs = (0..=m).map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone()).collect();
        TruncatedSeries { coeffs }
    }
}

impl<T: Coefficient> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn sub(self, rhs: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        let m = self.order().min(rhs.order());
        let coeffs = (0..=m).map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone()).collect();
        TruncatedSeries { coeffs }
    }
}

impl<T: Coefficient> Mul for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn mul(self, rhs: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        let m = self.order().min(rhs.order());
        let mut coeffs = vec![T::zero(); m + 1];
        for (i, a) in self.coeffs.iter().take(m + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(m + 1 - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl<T: Coefficient> Neg for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn neg(self) -> TruncatedSeries<T> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn series(c: &[i64], order: usize) -> TruncatedSeries<Q> {
        TruncatedSeries::new(c.iter().map(|&x| q(x, 1)).collect(), order)
    }

    #[test]
    fn geometric_inverse() {
        let f = series(&[1, -1], 6);
        let inv = f.inverse().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == q(1, 1)));
    }

    #[test]
    fn log_of_one_minus_u() {
        // log(1 − u) = −Σ u^k / k
        let l = series(&[1, -1], 5).log().unwrap();
        for k in 1..=5 {
            assert_eq!(l.coeff(k), q(-1, k as i64));
        }
        assert_eq!(l.coeff(0), q(0, 1));
    }

    #[test]
    fn exp_of_u() {
        let e = series(&[0, 1], 6).exp().unwrap();
        let mut fact = 1i64;
        for k in 0..=6i64 {
            if k > 0 {
                fact *= k;
            }
            assert_eq!(e.coeff(k as usize), q(1, fact));
        }
    }

    #[test]
    fn constant_term_errors() {
        assert!(series(&[2, 1], 3).log().is_err());
        assert!(series(&[1, 1], 3).exp().is_err());
        assert!(series(&[0, 1], 3).inverse().is_err());
    }

    #[test]
    fn powers() {
        let f = series(&[1, 0, -1], 8);
        let cube = f.powi(3).unwrap();
        assert_eq!(cube, series(&[1, 0, -3, 0, 3, 0, -1], 8));
        let back = cube.powi(-1).unwrap();
        assert_eq!(&back * &cube, TruncatedSeries::one(8));
    }

    #[test]
    fn float_mode() {
        let f = TruncatedSeries::new(vec![1.0, 0.5, 0.25], 6);
        let g = f.log().unwrap().exp().unwrap();
        assert!(g.max_abs_diff(&f) < 1e-14);
    }

    proptest! {
        #[test]
        fn exp_log_round_trip(tail in proptest::collection::vec(-9i64..=9, 1..9)) {
            let mut c = vec![1i64];
            c.extend(&tail);
            let order = c.len() - 1;
            let f = series(&c, order);
            let back = f.log().unwrap().exp().unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn inverse_is_two_sided(tail in proptest::collection::vec(-5i64..=5, 0..8), c0 in 1i64..4) {
            let mut c = vec![c0];
            c.extend(&tail);
            let order = c.len().max(2) - 1;
            let f = series(&c, order);
            let inv = f.inverse().unwrap();
            prop_assert_eq!(&f * &inv, TruncatedSeries::one(order));
        }
    }
}
