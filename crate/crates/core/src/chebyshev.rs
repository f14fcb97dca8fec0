//! Chebyshev polynomials by their three-term recurrences, over any ring.

use num_traits::Num;

/// `e_m`: 1 for even `m`, 0 for odd.
pub fn parity_indicator(m: u64) -> u64 {
    u64::from(m.is_multiple_of(2))
}

/// `T_m(x)`: `T_0 = 1`, `T_1 = x`, `T_{m+1} = 2x T_m − T_{m−1}`.
pub fn chebyshev_t<T: Num + Clone>(m: usize, x: &T) -> T {
    let two_x = x.clone() + x.clone();
    let (mut prev, mut cur) = (T::one(), x.clone());
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = two_x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_m(x)` for `m ≥ −1`: `U_{−1} = 0`, `U_0 = 1`, `U_{m+1} = 2x U_m − U_{m−1}`.
pub fn chebyshev_u<T: Num + Clone>(m: i64, x: &T) -> T {
    if m < 0 {
        return T::zero();
    }
    let two_x = x.clone() + x.clone();
    let (mut prev, mut cur) = (T::zero(), T::one());
    for _ in 0..m {
        let next = two_x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Tables `T_0..T_M` and `U_{−1}..U_M` at a fixed argument.
#[derive(Clone, Debug)]
pub struct ChebyshevCache<T> {
    t: Vec<T>,
    u: Vec<T>,
}

impl<T: Num + Clone> ChebyshevCache<T> {
    pub fn new(x: T, max_degree: usize) -> Self {
        let two_x = x.clone() + x.clone();
        let mut t = Vec::with_capacity(max_degree + 1);
        t.push(T::one());
        if max_degree >= 1 {
            t.push(x);
        }
        for m in 2..=max_degree {
            let next = two_x.clone() * t[m - 1].clone() - t[m - 2].clone();
            t.push(next);
        }
        // u[k] holds U_{k−1}
        let mut u = Vec::with_capacity(max_degree + 2);
        u.push(T::zero());
        u.push(T::one());
        for k in 2..=max_degree + 1 {
            let next = two_x.clone() * u[k - 1].clone() - u[k - 2].clone();
            u.push(next);
        }
        Self { t, u }
    }

    pub fn max_degree(&self) -> usize {
        self.t.len() - 1
    }

    pub fn t(&self, m: usize) -> &T {
        &self.t[m]
    }

    /// `U_m` for `m ≥ −1`.
    pub fn u(&self, m: i64) -> &T {
        &self.u[(m + 1) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn trigonometric_identities() {
        for k in 1..=31 {
            let theta = 0.1 * f64::from(k);
            let cache = ChebyshevCache::new(theta.cos(), 50);
            for m in 0..=50usize {
                let t = *cache.t(m);
                assert!((t - (m as f64 * theta).cos()).abs() < 1e-12, "T_{m} at θ={theta}");
                let u = *cache.u(m as i64);
                let lhs = u * theta.sin();
                assert!((lhs - ((m + 1) as f64 * theta).sin()).abs() < 1e-12, "U_{m} at θ={theta}");
                assert!((chebyshev_t(m, &theta.cos()) - t).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bridge_identity() {
        // 2 T_m = U_m − U_{m−2}
        for i in 0..=40 {
            let x = -1.2 + 0.06 * f64::from(i);
            for m in 1..=40i64 {
                let lhs = 2.0 * chebyshev_t(m as usize, &x);
                let rhs = chebyshev_u(m, &x) - chebyshev_u(m - 2, &x);
                assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0), "m={m}, x={x}");
            }
        }
    }

    #[test]
    fn exact_values() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        // T_3(1/2) = cos(π) = −1
        assert_eq!(chebyshev_t(3, &half), BigRational::from_integer(BigInt::from(-1)));
        assert_eq!(chebyshev_t(2, &0i64), -1);
        assert_eq!(chebyshev_u(2, &0i64), -1);
        assert_eq!(chebyshev_u(1, &3i64), 6);
        assert_eq!(chebyshev_u(-1, &3i64), 0);
        assert_eq!(parity_indicator(4), 1);
        assert_eq!(parity_indicator(7), 0);
    }
}
