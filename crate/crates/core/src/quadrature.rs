//! Integration over `[0, π]` for the trace-formula kernel.

use crate::error::{Error, Result};

pub const DEFAULT_ABS_TOL: f64 = 1e-10;

/// Tanh–sinh quadrature of `f` on `[a, b]`; fails if the error estimate
/// exceeds `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let out = quadrature::double_exponential::integrate(f, a, b, tol);
    if !out.integral.is_finite() || out.error_estimate > tol {
        return Err(Error::QuadratureFailure { tol, err: out.error_estimate });
    }
    Ok(out.integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trigonometric_integrals() {
        let v = integrate(|t| t.sin().powi(2), 0.0, PI, DEFAULT_ABS_TOL).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-12);
        let v = integrate(|t| (7.0 * t).cos() * t.cos(), 0.0, PI, DEFAULT_ABS_TOL).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn poisson_kernel() {
        // ∫₀^π dθ / (1 − 2r cos θ + r²) = π / (1 − r²)
        let r = 0.6;
        let v = integrate(|t| 1.0 / (1.0 - 2.0 * r * t.cos() + r * r), 0.0, PI, DEFAULT_ABS_TOL).unwrap();
        assert!((v - PI / (1.0 - r * r)).abs() < 1e-11);
    }
}
