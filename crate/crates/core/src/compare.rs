//! Joins the closed forms, the algebraic constraint solution and the numerical
//! oracle into one table of energy levels.

use serde::Serialize;

use crate::error::Result;
use crate::exec::Exec;
use crate::oracle::{solve_angular, solve_radial, AngularProblem, RadialProblem};
use crate::params::Params;
use crate::spectrum::{energy_parabolic, energy_spherical, solve_constraint_set, ConstraintSet, SpectrumConvention};

/// One energy level computed four independent ways.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumLine {
    pub n: u32,
    pub i: u32,
    pub e_formula: f64,
    pub e_parabolic: f64,
    pub e_algebraic: f64,
    pub e_numeric: f64,
    /// Parabolic energy exactly as printed, present on request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_parabolic_printed: Option<f64>,
    /// Largest pairwise relative deviation among the four reconciled columns.
    pub badge: f64,
}

impl SpectrumLine {
    pub fn columns(&self) -> [f64; 4] {
        [self.e_formula, self.e_parabolic, self.e_algebraic, self.e_numeric]
    }
}

/// Tolerance below which a line counts as consistent.
pub const BADGE_TOL: f64 = 1e-4;

fn max_pairwise(values: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for (k, a) in values.iter().enumerate() {
        for b in &values[k + 1..] {
            let scale = a.abs().max(b.abs());
            let d = if scale == 0.0 { 0.0 } else { (a - b).abs() / scale };
            worst = worst.max(if d.is_nan() { f64::INFINITY } else { d });
        }
    }
    worst
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompareOptions {
    pub with_printed: bool,
    pub exec: Exec,
}

/// The `levels` lowest levels with angular number `I`, i.e. `n = I+1, I+2, …`.
///
/// The numeric column feeds the angular oracle's lowest eigenvalue (`l = I`)
/// into the radial oracle, so it shares no closed form with the other columns.
pub fn compare_spectrum(params: &Params, i: u32, levels: usize, opts: CompareOptions) -> Result<Vec<SpectrumLine>> {
    let angular = solve_angular(&AngularProblem::new(*params, i), 1)?;
    let radial = solve_radial(&RadialProblem::new(*params, angular.extrapolated[0]), levels)?;
    let ps: Vec<u32> = (0..levels as u32).collect();
    let lines = opts.exec.map(&ps, |&p| -> Result<SpectrumLine> {
        let n = p + i + 1;
        let e_formula = energy_spherical(params, n, i)?;
        let e_parabolic = energy_parabolic(params, p, 0, i, SpectrumConvention::Reconciled)?;
        let e_algebraic =
            solve_constraint_set(params, i, p, (1, 1), ConstraintSet::One, SpectrumConvention::Reconciled)?.energy;
        let e_numeric = radial.extrapolated.get(p as usize).copied().unwrap_or(f64::NAN);
        let e_parabolic_printed = if opts.with_printed {
            Some(energy_parabolic(params, p, 0, i, SpectrumConvention::AsPrinted)?)
        } else {
            None
        };
        let badge = max_pairwise(&[e_formula, e_parabolic, e_algebraic, e_numeric]);
        Ok(SpectrumLine { n, i, e_formula, e_parabolic, e_algebraic, e_numeric, e_parabolic_printed, badge })
    });
    lines.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hydrogen_ground_line() {
        let lines = compare_spectrum(&Params::hydrogen(3), 0, 1, CompareOptions::default()).unwrap();
        assert_eq!(lines[0].e_formula, -0.5);
        assert!(lines[0].badge < BADGE_TOL);
    }

    #[test]
    fn nan_is_an_infinite_deviation() {
        assert_eq!(max_pairwise(&[1.0, f64::NAN]), f64::INFINITY);
    }
}
