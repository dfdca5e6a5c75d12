//! Brute-force special-function oracles that share no code with the
//! recurrence and series kernels they check.

use malachite_base::num::conversion::traits::RoundingFrom;
use malachite_base::rounding_modes::RoundingMode;
use malachite_q::Rational;

/// Jacobi polynomial from the Leibniz expansion of the Rodrigues formula:
/// `P = (−1)^n/(2^n n!) Σ_k C(n,k)(−1)^k (α+n)_{↓k} (β+n)_{↓(n−k)} (1−x)^{n−k}(1+x)^k`,
/// where `(y)_{↓k}` is the falling factorial.
///
/// Returns the value and the same sum taken over term magnitudes, which bounds
/// the rounding error of the alternating sum.
pub fn jacobi_rodrigues(n: u32, alpha: f64, beta: f64, x: f64) -> (f64, f64) {
    let falling = |y: f64, k: u32| (0..k).fold(1.0, |acc, j| acc * (y - j as f64));
    let mut binom = 1.0;
    let mut sum = 0.0;
    let mut magnitude = 0.0;
    for k in 0..=n {
        if k > 0 {
            binom = binom * (n - k + 1) as f64 / k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = binom
            * falling(alpha + n as f64, k)
            * falling(beta + n as f64, n - k)
            * (1.0 - x).powi((n - k) as i32)
            * (1.0 + x).powi(k as i32);
        sum += sign * term;
        magnitude += term.abs();
    }
    let factorial: f64 = (1..=n).map(f64::from).product();
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let norm = 2f64.powi(n as i32) * factorial;
    (sign * sum / norm, magnitude / norm)
}

/// Jacobi polynomial from its Gauss hypergeometric representation
/// `(α+1)_n/n! · ₂F₁(−n, n+α+β+1; α+1; (1−x)/2)`.
///
/// Returns the value and the sum of term magnitudes, as [`jacobi_rodrigues`] does.
pub fn jacobi_hypergeometric(n: u32, alpha: f64, beta: f64, x: f64) -> (f64, f64) {
    let z = (1.0 - x) / 2.0;
    let nf = n as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut magnitude = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (-nf + kf) * (nf + alpha + beta + 1.0 + kf) / ((alpha + 1.0 + kf) * (kf + 1.0)) * z;
        sum += term;
        magnitude += term.abs();
    }
    let pref: f64 = (0..n).map(|k| (alpha + 1.0 + k as f64) / (k + 1) as f64).product();
    (pref * sum, pref.abs() * magnitude)
}

fn exact(v: f64) -> Rational {
    Rational::try_from(v).expect("finite value")
}

/// `₁F₁(a; b; z)` summed in exact rational arithmetic from the binary values
/// of the arguments and rounded once at the end.
///
/// When `a` is a non-positive integer at least the full polynomial is summed;
/// otherwise exactly `terms` terms are.
pub fn hyp1f1_exact(a: f64, b: f64, z: f64, terms: u32) -> f64 {
    let (qa, qb, qz) = (exact(a), exact(b), exact(z));
    let count = if a <= 0.0 && a.fract() == 0.0 { terms.max((-a) as u32 + 1) } else { terms };
    let mut term = Rational::from(1u32);
    let mut sum = Rational::from(1u32);
    for k in 1..count {
        let km1 = Rational::from(k - 1);
        term = term * (&qa + &km1) * &qz / ((&qb + &km1) * Rational::from(k));
        sum += &term;
    }
    f64::rounding_from(&sum, RoundingMode::Nearest).0
}
