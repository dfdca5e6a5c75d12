//! Finite-volume eigensolver for the polar angular equation
//! `Θ'' + (N−2)cotφ Θ' − (2c1'/(1+cosφ) + 2c2'/(1−cosφ) + I(I+N−3)/sin²φ)Θ = −AΘ`.
//!
//! The substitution `Θ = (1+cosφ)^a (1−cosφ)^b g` with `a = (δ1+I)/2`,
//! `b = (δ2+I)/2` turns it into a Sturm–Liouville problem for `g` with weight
//! `W = sin^{N−2}φ (1+cosφ)^{2a} (1−cosφ)^{2b}` and a bounded potential.

use serde::Serialize;

use super::tridiag::SymTridiagonal;
use super::{EigenResult, GridRun};
use crate::error::Result;
use crate::params::Params;
use crate::spectrum::delta_pair;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngularProblem {
    pub params: Params,
    pub i: u32,
    /// Cells of the coarsest grid.
    pub cells: usize,
    pub grids: usize,
}

impl AngularProblem {
    pub fn new(params: Params, i: u32) -> AngularProblem {
        AngularProblem { params, i, cells: 1000, grids: 3 }
    }

    fn matrix(&self, a: f64, b: f64, m: usize) -> (SymTridiagonal, f64) {
        let nf = self.params.n as f64;
        let (_, c1, c2) = self.params.scaled();
        let fi = self.i as f64;
        let dphi = std::f64::consts::PI / m as f64;
        // ln p = ln W at a point: (N−2) ln sin + 2a ln(1+cos) + 2b ln(1−cos)
        let ln_w = |phi: f64| {
            let (s, c) = phi.sin_cos();
            (nf - 2.0) * s.ln() + 2.0 * a * (1.0 + c).ln() + 2.0 * b * (1.0 - c).ln()
        };
        let potential = |phi: f64| {
            let (s, c) = phi.sin_cos();
            let v = 2.0 * c1 / (1.0 + c) + 2.0 * c2 / (1.0 - c) + fi * (fi + nf - 3.0) / (s * s);
            let h1 = -a * s / (1.0 + c) + b * s / (1.0 - c);
            let dh1 = -a / (1.0 + c) - b / (1.0 - c);
            v - ((nf - 2.0) * c / s * h1 + h1 * h1 + dh1)
        };
        let centers: Vec<f64> = (0..m).map(|j| (j as f64 + 0.5) * dphi).collect();
        let ln_wc: Vec<f64> = centers.iter().map(|&x| ln_w(x)).collect();
        let ln_pf: Vec<f64> = (1..m).map(|j| ln_w(j as f64 * dphi)).collect();
        let inv = 1.0 / (dphi * dphi);
        let diag = (0..m)
            .map(|j| {
                let left = if j > 0 { (ln_pf[j - 1] - ln_wc[j]).exp() } else { 0.0 };
                let right = if j + 1 < m { (ln_pf[j] - ln_wc[j]).exp() } else { 0.0 };
                (left + right) * inv + potential(centers[j])
            })
            .collect();
        let off = (0..m - 1).map(|j| -(ln_pf[j] - 0.5 * (ln_wc[j] + ln_wc[j + 1])).exp() * inv).collect();
        (SymTridiagonal::new(diag, off), dphi)
    }
}

/// The `k` lowest separation constants `A` for fixed `I`.
pub fn solve_angular(problem: &AngularProblem, k: usize) -> Result<EigenResult> {
    let (d1, d2) = delta_pair(&problem.params, problem.i)?;
    let fi = problem.i as f64;
    let (a, b) = ((d1 + fi) / 2.0, (d2 + fi) / 2.0);
    let mut runs = Vec::with_capacity(problem.grids);
    let mut m = problem.cells;
    for _ in 0..problem.grids {
        let (t, h) = problem.matrix(a, b, m);
        runs.push(GridRun { points: m, step: h, eigenvalues: t.lowest(k) });
        m *= 2;
    }
    Ok(EigenResult::from_runs(runs, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_eigenvalues() {
        let res = solve_angular(&AngularProblem::new(Params::hydrogen(3), 0), 3).unwrap();
        for (l, a) in res.extrapolated.iter().enumerate() {
            let exact = (l * (l + 1)) as f64;
            assert!((a - exact).abs() < 1e-6, "l={l}: {a}");
        }
    }
}
