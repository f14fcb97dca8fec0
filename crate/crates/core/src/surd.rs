//! Exact arithmetic in `Q(√d)`.
//!
//! Sums like `Σ N_m / q^{m/2}` cancel against closed forms of size `q^{N/2}`;
//! carrying them as `a + b√d` keeps the residual exact until the final
//! conversion to `f64`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::rational_to_f64;

/// `a + b√d` with `d` a positive integer that is not a perfect square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: BigRational,
    pub b: BigRational,
    d: u64,
}

fn is_square(d: u64) -> Option<u64> {
    let s = d.sqrt();
    (s * s == d).then_some(s)
}

fn int(k: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(k.into())
}

impl QuadSurd {
    /// `a + b√d`; folds `√d` into the rational part when `d` is a square.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        assert!(d > 0, "radicand must be positive");
        match is_square(d) {
            Some(s) => Self { a: a + b * int(s), b: BigRational::zero(), d: 1 },
            None => Self { a, b, d },
        }
    }

    pub fn rational(a: BigRational, d: u64) -> Self {
        Self::new(a, BigRational::zero(), d)
    }

    pub fn zero(d: u64) -> Self {
        Self::rational(BigRational::zero(), d)
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    /// `d^{k/2}` for any integer `k`.
    pub fn sqrt_power(d: u64, k: i64) -> Self {
        let half = k.div_euclid(2);
        let odd = k.rem_euclid(2) == 1;
        let base = int(d);
        let mut scale = BigRational::one();
        for _ in 0..half.unsigned_abs() {
            scale *= &base;
        }
        if half < 0 {
            scale = scale.recip();
        }
        if odd {
            Self::new(BigRational::zero(), scale, d)
        } else {
            Self::rational(scale, d)
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self { a: &self.a * s, b: &self.b * s, d: self.d }
    }

    /// `1 / self`, via the conjugate.
    pub fn recip(&self) -> Self {
        let norm = &self.a * &self.a - &self.b * &self.b * int(self.d);
        assert!(!norm.is_zero(), "division by zero in Q(√d)");
        Self { a: &self.a / &norm, b: -(&self.b / &norm), d: self.d }
    }

    pub fn to_f64(&self) -> f64 {
        // a + b√d with cancellation handled by the conjugate when signs differ
        let a = rational_to_f64(&self.a);
        let b = rational_to_f64(&self.b);
        if self.b.is_zero() {
            return a;
        }
        if self.a.is_zero() || self.a.is_positive() == self.b.is_positive() {
            return a + b * (self.d as f64).sqrt();
        }
        // a + b√d = (a² − b²d) / (a − b√d)
        let norm = &self.a * &self.a - &self.b * &self.b * int(self.d);
        rational_to_f64(&norm) / (a - b * (self.d as f64).sqrt())
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.d, rhs.d, "mixed radicands");
    }
}

impl Add for &QuadSurd {
    type Output = QuadSurd;
    fn add(self, rhs: &QuadSurd) -> QuadSurd {
        self.check(rhs);
        QuadSurd { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.d }
    }
}

impl Sub for &QuadSurd {
    type Output = QuadSurd;
    fn sub(self, rhs: &QuadSurd) -> QuadSurd {
        self.check(rhs);
        QuadSurd { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.d }
    }
}

impl Mul for &QuadSurd {
    type Output = QuadSurd;
    fn mul(self, rhs: &QuadSurd) -> QuadSurd {
        self.check(rhs);
        QuadSurd {
            a: &self.a * &rhs.a + &self.b * &rhs.b * int(self.d),
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        }
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd { a: -&self.a, b: -&self.b, d: self.d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_and_products() {
        let r = QuadSurd::sqrt_power(2, 3); // 2√2
        assert_eq!(r.a, int(0));
        assert_eq!(r.b, int(2));
        let sq = &r * &r;
        assert_eq!(sq, QuadSurd::rational(int(8), 2));
        let inv = QuadSurd::sqrt_power(2, -3);
        assert_eq!(&inv * &r, QuadSurd::rational(int(1), 2));
        assert!((QuadSurd::sqrt_power(13, 5).to_f64() - 13f64.powf(2.5)).abs() < 1e-8);
    }

    #[test]
    fn square_radicand_folds() {
        let x = QuadSurd::new(int(1), int(2), 9);
        assert_eq!(x.a, int(7));
        assert!(x.b.is_zero());
        assert_eq!(QuadSurd::sqrt_power(1, 7).to_f64(), 1.0);
    }

    #[test]
    fn cancellation_is_exact() {
        // (√2 − 1)(√2 + 1) = 1, then a large value minus its twin
        let s = QuadSurd::new(int(-1), int(1), 2);
        let t = QuadSurd::new(int(1), int(1), 2);
        assert_eq!((&s * &t).to_f64(), 1.0);
        let big = QuadSurd::sqrt_power(2, 161);
        let tiny = QuadSurd::new(int(0), int(1), 2).scale(&BigRational::new(1.into(), 1000.into()));
        let diff = &(&big + &tiny) - &big;
        assert!((diff.to_f64() - 2f64.sqrt() / 1000.0).abs() < 1e-18);
        let recip = t.recip();
        assert!((recip.to_f64() - (2f64.sqrt() - 1.0)).abs() < 1e-15);
    }
}
