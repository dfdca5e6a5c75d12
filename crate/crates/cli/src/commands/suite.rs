//! `suite`: every check with default settings, merged into one report.

use serde_json::Value;

use qkepler_core::{compare_spectrum, CompareOptions, Exec as CoreExec};
use qkepler_symbolic::{Convention, Exec};

use super::{erratum, spectrum, verify, wavecheck};
use crate::config::{AngularFormArg, Couplings, KindArg, WavecheckArgs, WhichArg};
use crate::report::{Document, Output, Status};

pub const COUPLINGS: [(f64, f64); 3] = [(0.0, 0.0), (0.1, 0.2), (1.0, 2.0)];

fn couplings(c1: f64, c2: f64) -> Couplings {
    Couplings { c0: 1.0, c1, c2, hbar: 1.0 }
}

/// The wavefunction grid: angular (corrected indices), radial and parabolic cases.
pub fn wavecheck_grid() -> Vec<WavecheckArgs> {
    let base = |which, n_dim, (c1, c2): (f64, f64)| WavecheckArgs {
        which,
        n_dim,
        couplings: couplings(c1, c2),
        n: None,
        l: None,
        i: 0,
        n1: None,
        n2: None,
        form: AngularFormArg::Corrected,
        tol: 1e-8,
    };
    let mut out = Vec::new();
    for n_dim in [3, 4, 5] {
        let c = (0.1, 0.2);
        for (l, i) in [(0, 0), (2, 1)] {
            out.push(WavecheckArgs { l: Some(l), i, ..base(WhichArg::Angular, n_dim, c) });
        }
        for (n, l, i) in [(1, 0, 0), (3, 1, 1)] {
            out.push(WavecheckArgs { n: Some(n), l: Some(l), i, ..base(WhichArg::Radial, n_dim, c) });
        }
        for (n1, n2, i) in [(0, 0, 0), (1, 2, 1)] {
            out.push(WavecheckArgs { n1: Some(n1), n2: Some(n2), i, ..base(WhichArg::Parabolic, n_dim, c) });
        }
    }
    out.push(WavecheckArgs { n: Some(2), l: Some(1), ..base(WhichArg::Radial, 3, (0.0, 0.0)) });
    out.push(WavecheckArgs { l: Some(1), ..base(WhichArg::Angular, 3, (1.0, 2.0)) });
    out
}

pub fn core_exec(exec: Exec) -> CoreExec {
    match exec {
        Exec::Sequential => CoreExec::Sequential,
        Exec::Parallel => CoreExec::Parallel,
    }
}

pub fn run(seed: u64, run: Value, exec: Exec, timings: bool) -> Output {
    let mut doc = Document::new(run.clone());
    let mut status = Status::Ok;
    let mut files = Vec::new();
    let fail = |status: Status, msg: String, run: Value| {
        let mut out = Output::new(Document::new(run), status);
        out.diagnostic = Some(msg);
        out
    };

    let mut reports = Vec::new();
    for n in 3..=5 {
        for conv in [Convention::Standard, Convention::Reversed] {
            match verify::reports(KindArg::Classical, n, conv, exec) {
                Ok(r) => reports.extend(verify::without_repeats(r, conv)),
                Err(m) => return fail(Status::ToolFailure, m, run),
            }
        }
        match verify::reports(KindArg::Quantum, n, Convention::Standard, exec) {
            Ok(r) => reports.extend(r),
            Err(m) => return fail(Status::ToolFailure, m, run),
        }
    }
    let (vdoc, dumps) = verify::document(run.clone(), &reports, timings);
    status = status.worst(verify::status_of(&reports));
    doc.merge(vdoc);
    files.extend(dumps);

    for n in 3..=5 {
        for (c1, c2) in COUPLINGS {
            let p = match spectrum::params(n, &couplings(c1, c2)) {
                Ok(p) => p,
                Err(e) => return fail(spectrum::error_status(&e), e.to_string(), run),
            };
            for i in 0..=1 {
                let opts = CompareOptions { with_printed: false, exec: core_exec(exec) };
                match compare_spectrum(&p, i, 3, opts) {
                    Ok(lines) => {
                        let prefix = format!("spectrum.N{n}.c{c1}_{c2}.");
                        if lines.iter().any(|l| l.badge >= qkepler_core::BADGE_TOL) {
                            status = status.worst(Status::Erratum);
                        }
                        doc.results.extend(spectrum::entries(&lines, qkepler_core::BADGE_TOL, &prefix));
                    }
                    Err(e) => return fail(spectrum::error_status(&e), e.to_string(), run),
                }
            }
        }
    }

    for args in wavecheck_grid() {
        match wavecheck::check(&args) {
            Ok(c) => {
                if c.worst() >= args.tol {
                    status = status.worst(Status::Erratum);
                }
                let prefix = format!("wavecheck.N{}.", args.n_dim);
                doc.results.extend(wavecheck::entries(&c, args.tol, &prefix));
            }
            Err(e) => return fail(spectrum::error_status(&e), e.to_string(), run),
        }
    }

    match erratum::spectral_document(run.clone(), 20, seed) {
        Ok(edoc) => doc.merge(edoc),
        Err(e) => return fail(spectrum::error_status(&e), e.to_string(), run),
    }
    doc.errata.sort_by(|a, b| a.key.cmp(&b.key));
    status = status.worst(erratum::ledger_status(&doc));
    let mut out = Output::new(doc, status);
    out.files = files;
    out.attach_evidence();
    out
}
