//! `spectrum`: energy levels computed four ways, with deviation badges.

use serde_json::{json, Value};

use qkepler_core::{compare_spectrum, CompareOptions, CoreError, Exec, Params, SpectrumLine};

use crate::config::{Couplings, SpectrumArgs, SpectrumConventionArg};
use crate::report::{Document, Output, ResultEntry, Status};

pub const CSV_HEADER: &str = "n,I,E_formula,E_parabolic,E_algebraic,E_numeric,badge";

pub fn params(n: usize, c: &Couplings) -> Result<Params, CoreError> {
    Params::new(n, c.c0, c.c1, c.c2, c.hbar)
}

pub fn to_csv(lines: &[SpectrumLine], with_printed: bool) -> String {
    let mut s = String::from(CSV_HEADER);
    if with_printed {
        s.push_str(",E_parabolic_printed");
    }
    s.push('\n');
    for l in lines {
        s.push_str(&format!(
            "{},{},{:e},{:e},{:e},{:e},{:e}",
            l.n, l.i, l.e_formula, l.e_parabolic, l.e_algebraic, l.e_numeric, l.badge
        ));
        if let Some(p) = l.e_parabolic_printed {
            s.push_str(&format!(",{p:e}"));
        }
        s.push('\n');
    }
    s
}

pub fn entries(lines: &[SpectrumLine], tol: f64, prefix: &str) -> Vec<ResultEntry> {
    lines
        .iter()
        .map(|l| {
            let verdict = if l.badge < tol { "pass" } else { "residual" };
            ResultEntry::new(format!("{prefix}level.n{}.I{}", l.n, l.i), verdict, json!(l))
        })
        .collect()
}

/// Status for a fall-to-center or other spectral error.
pub fn error_status(e: &CoreError) -> Status {
    match e {
        CoreError::FallToCenter { .. } => Status::FallToCenter,
        CoreError::Dimension(_) | CoreError::QuantumNumbers(_) | CoreError::Domain(_) => Status::Usage,
        CoreError::Quadrature(_) => Status::ToolFailure,
    }
}

pub fn run(args: &SpectrumArgs, run: Value, exec: Exec) -> Output {
    let fail = |e: CoreError, run: Value| {
        let mut out = Output::new(Document::new(run), error_status(&e));
        out.diagnostic = Some(e.to_string());
        out
    };
    if args.levels == 0 {
        let mut out = Output::new(Document::new(run), Status::Usage);
        out.diagnostic = Some("--levels must be at least 1".into());
        return out;
    }
    let p = match params(args.n, &args.couplings) {
        Ok(p) => p,
        Err(e) => return fail(e, run),
    };
    let with_printed = args.convention == SpectrumConventionArg::AsPrinted;
    let lines = match compare_spectrum(&p, args.i, args.levels, CompareOptions { with_printed, exec }) {
        Ok(l) => l,
        Err(e) => return fail(e, run),
    };
    let mut doc = Document::new(run);
    doc.results = entries(&lines, args.badge_tol, "");
    let status = if lines.iter().all(|l| l.badge < args.badge_tol) { Status::Ok } else { Status::Erratum };
    let mut out = Output::new(doc, status);
    out.csv = Some(to_csv(&lines, with_printed));
    out
}
