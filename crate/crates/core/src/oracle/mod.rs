//! Independent numerical eigensolvers and brute-force special-function
//! oracles used to adjudicate the closed forms.

pub mod angular;
pub mod radial;
pub mod series;
pub mod tridiag;

use serde::Serialize;

pub use angular::{solve_angular, AngularProblem};
pub use radial::{solve_radial, RadialProblem};

/// Eigenvalues on one grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridRun {
    pub points: usize,
    pub step: f64,
    pub eigenvalues: Vec<f64>,
}

/// Ascending eigenvalues from a sequence of halved grids, with Richardson
/// extrapolation of the two finest grids.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenResult {
    pub runs: Vec<GridRun>,
    pub extrapolated: Vec<f64>,
    /// `|extrapolated − finest| / 3`-style error estimate per level.
    pub error_estimate: Vec<f64>,
    /// `(E_h − E_{h/2}) / (E_{h/2} − E_{h/4})` per level when three grids ran.
    pub convergence_ratio: Vec<f64>,
    pub warnings: Vec<String>,
}

impl EigenResult {
    fn from_runs(runs: Vec<GridRun>, warnings: Vec<String>) -> EigenResult {
        let levels = runs.iter().map(|r| r.eigenvalues.len()).min().unwrap_or(0);
        let mut extrapolated = Vec::with_capacity(levels);
        let mut error_estimate = Vec::with_capacity(levels);
        let mut convergence_ratio = Vec::new();
        let last = runs.len() - 1;
        for k in 0..levels {
            let fine = runs[last].eigenvalues[k];
            if last == 0 {
                extrapolated.push(fine);
                error_estimate.push(f64::NAN);
                continue;
            }
            let coarse = runs[last - 1].eigenvalues[k];
            let diff = (fine - coarse) / 3.0;
            extrapolated.push(fine + diff);
            error_estimate.push(diff.abs());
            if last >= 2 {
                let coarser = runs[last - 2].eigenvalues[k];
                convergence_ratio.push((coarser - coarse) / (coarse - fine));
            }
        }
        EigenResult { runs, extrapolated, error_estimate, convergence_ratio, warnings }
    }
}
