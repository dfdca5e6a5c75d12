//! Special-function kernels.

use crate::error::{CoreError, Result};

pub use statrs::function::gamma::{gamma, ln_gamma};

/// Jacobi polynomial `P_n^{(α,β)}(x)` by the three-term recurrence.
pub fn jacobi_p(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let ab = alpha + beta;
    let mut cur = ((ab + 2.0) * x + (alpha - beta)) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + alpha * alpha - beta * beta);
        let a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
        let next = (a2 * cur - a3 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

fn nonpositive_integer(v: f64) -> Option<u64> {
    (v <= 0.0 && v == v.round() && v > -1e15).then(|| (-v) as u64)
}

const SERIES_TOL: f64 = 1e-16;
const SERIES_MAX: usize = 100_000;

/// Confluent hypergeometric function `₁F₁(a; b; z)`.
///
/// Exact finite sum when `a` is a non-positive integer; otherwise the power
/// series, with Kummer's transformation applied for negative `z`.
pub fn hyp1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if let Some(m) = nonpositive_integer(a) {
        if let Some(j) = nonpositive_integer(b) {
            if m > j {
                return Err(CoreError::Domain(format!("1F1({a}; {b}; z): denominator vanishes before termination")));
            }
        }
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 0..m {
            let k = k as f64;
            term *= (a + k) / (b + k) * z / (k + 1.0);
            sum += term;
        }
        return Ok(sum);
    }
    if nonpositive_integer(b).is_some() {
        return Err(CoreError::Domain(format!("1F1({a}; {b}; z) is undefined for non-positive integer b")));
    }
    if z < 0.0 {
        return Ok(z.exp() * series(b - a, b, -z)?);
    }
    series(a, b, z)
}

fn series(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..SERIES_MAX {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * z / (kf + 1.0);
        sum += term;
        if term.abs() <= SERIES_TOL * sum.abs() && kf > z {
            return Ok(sum);
        }
    }
    Err(CoreError::Domain(format!("1F1({a}; {b}; {z}) series did not converge")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_p(0, 0.3, 0.7, 0.2), 1.0);
        let (a, b, x) = (0.3, 1.7, -0.4);
        assert_eq!(jacobi_p(1, a, b, x), ((a + b + 2.0) * x + (a - b)) / 2.0);
        assert!((jacobi_p(2, 0.0, 0.0, 0.5) + 0.125).abs() < 1e-16);
    }

    #[test]
    fn hyp1f1_examples() {
        assert_eq!(hyp1f1(0.7, 1.3, 0.0).unwrap(), 1.0);
        let (b, z) = (2.5, 0.8);
        assert!((hyp1f1(-1.0, b, z).unwrap() - (1.0 - z / b)).abs() < 1e-16);
        assert!((hyp1f1(1.0, 1.0, 1.0).unwrap() - std::f64::consts::E).abs() < 1e-15);
        assert!((hyp1f1(1.0, 1.0, -3.0).unwrap() - (-3.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn hyp1f1_domain_errors() {
        assert!(hyp1f1(0.5, -2.0, 1.0).is_err());
        assert!(hyp1f1(-3.0, -2.0, 1.0).is_err());
        assert!(hyp1f1(-2.0, -2.0, 1.0).is_ok());
    }
}
