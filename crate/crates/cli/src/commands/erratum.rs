//! `erratum`: the consolidated ledger of printed forms that fail machine checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qkepler_core::audit::{phi_comparison, spectral_audits, Audit, PhiPoint, PHI_TOL};
use qkepler_core::{CoreError, Params};
use qkepler_symbolic::{Convention, Exec};

use super::spectrum::error_status;
use super::verify;
use crate::config::KindArg;
use crate::report::{Document, ErratumEntry, Output, ResultEntry, Status};

pub const PHI_KEY: &str = "structure-function/expanded-vs-factorized";

fn max_dev(a: &Audit, f: impl Fn(&qkepler_core::audit::EvidenceRow) -> f64) -> f64 {
    a.rows.iter().map(f).fold(0.0, f64::max)
}

pub fn audit_entry(a: &Audit) -> ErratumEntry {
    let evidence = json!({
        "tolerance": a.tolerance,
        "max_printed_deviation": max_dev(a, |r| r.printed_deviation()),
        "max_computed_deviation": max_dev(a, |r| r.computed_deviation()),
        "rows": a.rows,
    });
    ErratumEntry {
        key: a.key.into(),
        subject: a.subject.into(),
        printed: a.printed.into(),
        finding: a.finding.clone(),
        status: if a.discrepancy { "confirmed" } else { "not-reproduced" }.into(),
        evidence,
        artifact: ErratumEntry::artifact_path(a.key),
    }
}

/// Random sample points for the structure-function probe.
pub fn phi_points(count: usize, seed: u64) -> Vec<PhiPoint> {
    let params = Params { n: 3, c0: 1.0, c1: 0.1, c2: 0.2, hbar: 1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| PhiPoint {
            params,
            i: 0,
            x: rng.random_range(0.0..6.0),
            u: rng.random_range(-2.0..2.0),
            energy: rng.random_range(-1.0..-0.01),
        })
        .collect()
}

/// Per-point results and the ledger entry for the expanded structure function.
pub fn phi_probe(count: usize, seed: u64) -> Result<(Vec<ResultEntry>, ErratumEntry), CoreError> {
    let cmp = phi_comparison(&phi_points(count, seed))?;
    let results = cmp
        .iter()
        .enumerate()
        .map(|(k, c)| ResultEntry::new(format!("phi.point{k}"), if c.agree { "pass" } else { "residual" }, json!(c)))
        .collect();
    let mismatches = cmp.iter().filter(|c| !c.agree).count();
    let finding = if mismatches == 0 {
        format!("expanded and factorized forms agree at all {count} points within {PHI_TOL:e} of the term scale")
    } else {
        format!("expanded and factorized forms disagree at {mismatches} of {count} points")
    };
    let entry = ErratumEntry {
        key: PHI_KEY.into(),
        subject: "structure function of the quantum algebra".into(),
        printed: "expanded polynomial Phi(x, u, H) with h read as hbar".into(),
        finding,
        status: if mismatches > 0 { "confirmed" } else { "not-reproduced" }.into(),
        evidence: json!({ "seed": seed, "tolerance": PHI_TOL, "mismatches": mismatches, "points": cmp }),
        artifact: ErratumEntry::artifact_path(PHI_KEY),
    };
    Ok((results, entry))
}

/// Spectral ledger and structure-function probe.
pub fn spectral_document(run: Value, points: usize, seed: u64) -> Result<Document, CoreError> {
    let mut doc = Document::new(run);
    for a in spectral_audits()? {
        let e = audit_entry(&a);
        doc.results.push(ResultEntry::new(
            format!("erratum.{}", a.key),
            if a.discrepancy { "residual" } else { "pass" },
            json!({ "status": e.status, "artifact": e.artifact }),
        ));
        doc.errata.push(e);
    }
    let (results, entry) = phi_probe(points, seed)?;
    doc.results.extend(results);
    doc.errata.push(entry);
    Ok(doc)
}

/// Status of a finished ledger: any confirmed entry is an erratum.
pub fn ledger_status(doc: &Document) -> Status {
    if doc.errata.iter().any(ErratumEntry::confirmed) {
        Status::Erratum
    } else {
        Status::Ok
    }
}

/// Adds the exact algebra checks whose printed forms feed the ledger.
pub fn algebra_document(run: Value, exec: Exec) -> Result<(Document, Vec<(String, String)>), String> {
    let mut reports = Vec::new();
    for conv in [Convention::Standard, Convention::Reversed] {
        reports.extend(verify::without_repeats(verify::reports(KindArg::Classical, 3, conv, exec)?, conv));
    }
    reports.extend(verify::reports(KindArg::Quantum, 3, Convention::Standard, exec)?);
    Ok(verify::document(run, &reports, false))
}

pub fn run(all: bool, points: usize, seed: u64, run: Value, exec: Exec) -> Output {
    let mut doc = match spectral_document(run.clone(), points, seed) {
        Ok(d) => d,
        Err(e) => {
            let mut out = Output::new(Document::new(run), error_status(&e));
            out.diagnostic = Some(e.to_string());
            return out;
        }
    };
    let mut dumps = Vec::new();
    if all {
        match algebra_document(run.clone(), exec) {
            Ok((d, f)) => {
                doc.merge(d);
                dumps = f;
            }
            Err(msg) => {
                let mut out = Output::new(Document::new(run), Status::ToolFailure);
                out.diagnostic = Some(msg);
                return out;
            }
        }
    }
    doc.errata.sort_by(|a, b| a.key.cmp(&b.key));
    let status = ledger_status(&doc);
    let mut out = Output::new(doc, status);
    out.files = dumps;
    out.attach_evidence();
    out
}
