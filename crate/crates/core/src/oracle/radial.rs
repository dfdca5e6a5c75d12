//! Finite-difference eigensolver for the reduced radial equation
//! `−½u'' + (−c0'/r + G/(2r²))u = E'u`, `u = r^{(N−1)/2}R`, `G = A + (N−1)(N−3)/4`.

use serde::Serialize;

use super::tridiag::SymTridiagonal;
use super::{EigenResult, GridRun};
use crate::error::{CoreError, Result};
use crate::params::Params;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialProblem {
    pub params: Params,
    /// Angular separation constant fed into the radial equation.
    pub a_eff: f64,
    /// Left Dirichlet point, in units of length (zero places it at the origin).
    pub r_min: f64,
    /// Right Dirichlet point; `None` picks a box from the requested level count.
    pub r_max: Option<f64>,
    /// Interior points of the coarsest grid.
    pub points: usize,
    /// Number of successively halved grids (at least two for extrapolation).
    pub grids: usize,
}

impl RadialProblem {
    pub fn new(params: Params, a_eff: f64) -> RadialProblem {
        RadialProblem { params, a_eff, r_min: 0.0, r_max: None, points: 4000, grids: 3 }
    }

    /// Coefficient `G` of the inverse-square term in the reduced equation.
    pub fn inverse_square(&self) -> f64 {
        let nf = self.params.n as f64;
        self.a_eff + (nf - 1.0) * (nf - 3.0) / 4.0
    }

    /// Box length that contains the `k` lowest states with negligible tail.
    pub fn default_r_max(&self, k: usize) -> f64 {
        let (c0s, _, _) = self.params.scaled();
        let nu = 0.5 + (0.25 + self.inverse_square()).max(0.0).sqrt();
        let n_eff = k as f64 + nu - 1.0;
        (40.0 * n_eff + 2.0 * n_eff * n_eff) / c0s
    }

    fn matrix(&self, r_max: f64, m: usize) -> (SymTridiagonal, f64) {
        let (c0s, _, _) = self.params.scaled();
        let g = self.inverse_square();
        let h = (r_max - self.r_min) / (m + 1) as f64;
        let kin = 1.0 / (h * h);
        let diag = (1..=m)
            .map(|i| {
                let r = self.r_min + i as f64 * h;
                kin - c0s / r + g / (2.0 * r * r)
            })
            .collect();
        let off = vec![-0.5 * kin; m - 1];
        (SymTridiagonal::new(diag, off), h)
    }
}

/// The `k` lowest bound levels, in energy units (`E = ħ²E'`).
pub fn solve_radial(problem: &RadialProblem, k: usize) -> Result<EigenResult> {
    let g = problem.inverse_square();
    if g < -0.25 {
        return Err(CoreError::FallToCenter { index: 0, radicand: g + 0.25 });
    }
    if problem.points < 200 || problem.grids == 0 || problem.r_min < 0.0 {
        return Err(CoreError::Domain("radial grid needs at least 200 points and r_min >= 0".into()));
    }
    let r_max = problem.r_max.unwrap_or_else(|| problem.default_r_max(k));
    if r_max <= problem.r_min {
        return Err(CoreError::Domain("r_max must exceed r_min".into()));
    }
    let h2 = problem.params.hbar * problem.params.hbar;
    let mut warnings = Vec::new();
    let mut runs = Vec::with_capacity(problem.grids);
    let mut m = problem.points;
    for _ in 0..problem.grids {
        let (t, h) = problem.matrix(r_max, m);
        let mut eigenvalues: Vec<f64> = t.lowest(k).into_iter().filter(|&e| e < 0.0).map(|e| e * h2).collect();
        if eigenvalues.len() < k {
            warnings.push(format!("only {} of {k} levels are bound in a box of {m} points", eigenvalues.len()));
            eigenvalues.truncate(eigenvalues.len());
        }
        runs.push(GridRun { points: m, step: h, eigenvalues });
        m = 2 * m + 1;
    }
    Ok(EigenResult::from_runs(runs, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hydrogen_levels() {
        let res = solve_radial(&RadialProblem::new(Params::hydrogen(3), 0.0), 2).unwrap();
        assert!((res.extrapolated[0] + 0.5).abs() < 1e-4);
        assert!((res.extrapolated[1] + 0.125).abs() < 1e-4);
    }

    #[test]
    fn strong_attraction_falls_to_center() {
        let p = RadialProblem::new(Params::hydrogen(3), -0.3);
        assert!(matches!(solve_radial(&p, 1), Err(CoreError::FallToCenter { .. })));
    }
}
