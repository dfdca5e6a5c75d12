//! `wavecheck`: residuals of an explicit eigenfunction in its separated
//! equation, and an audit of its printed normalization constant.

use std::f64::consts::PI;

use serde_json::{json, Value};

use qkepler_core::wavefunctions::{
    build_angular, build_parabolic, build_radial, AngularForm, NormReport, ParabolicRelations, ResidualSample,
};
use qkepler_core::CoreError;

use super::spectrum::{error_status, params};
use crate::config::{AngularFormArg, WavecheckArgs, WhichArg};
use crate::report::{object, Document, Output, ResultEntry, Status};

/// Finite-difference step for a sample at `t` with local length scale `min(t, 1)`,
/// near the crossover between truncation and roundoff of the five-point stencil.
pub fn step(t: f64) -> f64 {
    2e-3 * t.min(1.0)
}

pub const ANGULAR_POINTS: [f64; 5] = [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 5.0 * PI / 6.0];
pub const RADIAL_POINTS: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
pub const PARABOLIC_POINTS: [f64; 3] = [0.5, 1.0, 2.0];

/// Residual samples and, where a printed constant exists, its norm audit.
pub struct Check {
    pub label: String,
    pub samples: Vec<ResidualSample>,
    pub norm: Option<NormReport>,
}

impl Check {
    pub fn worst(&self) -> f64 {
        self.samples.iter().map(|s| s.relative).fold(0.0, f64::max)
    }
}

fn usage(msg: &str) -> CoreError {
    CoreError::QuantumNumbers(msg.into())
}

pub fn check(args: &WavecheckArgs) -> Result<Check, CoreError> {
    let p = params(args.n_dim, &args.couplings)?;
    let i = args.i;
    match args.which {
        WhichArg::Angular => {
            let l = args.l.ok_or_else(|| usage("--l is required for the angular check"))?;
            let form = match args.form {
                AngularFormArg::AsPrinted => AngularForm::AsPrinted,
                AngularFormArg::Corrected => AngularForm::Corrected,
            };
            let s = build_angular(&p, l, i, form)?;
            let samples =
                ANGULAR_POINTS.iter().map(|&phi| s.residual(phi, step(1.0))).collect::<Result<Vec<_>, _>>()?;
            Ok(Check { label: format!("angular.l{l}.I{i}"), samples, norm: Some(s.norm()?) })
        }
        WhichArg::Radial => {
            let n = args.n.ok_or_else(|| usage("--n is required for the radial check"))?;
            let l = args.l.unwrap_or(i);
            let s = build_radial(&p, n, l, i)?;
            let samples = RADIAL_POINTS.iter().map(|&r| s.residual(r, step(r))).collect::<Result<Vec<_>, _>>()?;
            Ok(Check { label: format!("radial.n{n}.l{l}.I{i}"), samples, norm: Some(s.norm()?) })
        }
        WhichArg::Parabolic => {
            let n1 = args.n1.ok_or_else(|| usage("--n1 is required for the parabolic check"))?;
            let n2 = args.n2.ok_or_else(|| usage("--n2 is required for the parabolic check"))?;
            let s = build_parabolic(&p, n1, n2, i)?;
            let mut samples = Vec::new();
            for which in [1, 2] {
                for &t in &PARABOLIC_POINTS {
                    samples.push(s.residual(which, t, step(t), ParabolicRelations::Reconciled));
                }
            }
            Ok(Check { label: format!("parabolic.n1_{n1}.n2_{n2}.I{i}"), samples, norm: None })
        }
    }
}

pub fn entries(c: &Check, tol: f64, prefix: &str) -> Vec<ResultEntry> {
    let mut out: Vec<ResultEntry> = c
        .samples
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let verdict = if s.relative < tol { "pass" } else { "residual" };
            ResultEntry::new(format!("{prefix}{}.residual.{k}", c.label), verdict, json!(s))
        })
        .collect();
    if let Some(n) = &c.norm {
        let verdict = if (n.squared_norm - 1.0).abs() < 1e-6 { "pass" } else { "residual" };
        let data = object([
            ("squared_norm", json!(n.squared_norm)),
            ("printed_constant", json!(n.constant)),
            ("computed_constant", json!(n.computed_constant)),
            ("ratio_printed_sq_over_computed_sq", json!(n.ratio)),
        ]);
        out.push(ResultEntry::new(format!("{prefix}{}.norm", c.label), verdict, data));
    }
    out
}

pub fn run(args: &WavecheckArgs, run: Value) -> Output {
    match check(args) {
        Ok(c) => {
            let mut doc = Document::new(run);
            doc.results = entries(&c, args.tol, "");
            let status = if c.worst() < args.tol { Status::Ok } else { Status::Erratum };
            Output::new(doc, status)
        }
        Err(e) => {
            let mut out = Output::new(Document::new(run), error_status(&e));
            out.diagnostic = Some(e.to_string());
            out
        }
    }
}
