//! `verify`: exact checks of the integrals of motion and their algebra.

use serde_json::{json, Value};

use qkepler_algebra::{
    build_classical, build_quantum, verify_classical, verify_quantum, Ctx, Kind, ModelParams, QuantumChecks,
    RungeLenzForm, Verdict, VerificationReport,
};
use qkepler_symbolic::{Convention, Exec};

use crate::config::{BracketArg, KindArg, VerifyArgs};
use crate::report::{object, Document, ErratumEntry, Output, ResultEntry, Status};

pub const MIN_N: usize = 3;
pub const MAX_N: usize = 6;

pub fn convention(arg: BracketArg) -> Convention {
    match arg {
        BracketArg::Standard => Convention::Standard,
        BracketArg::Reversed => Convention::Reversed,
    }
}

/// Runs one verification suite; the error is a tool failure message.
pub fn reports(kind: KindArg, n: usize, conv: Convention, exec: Exec) -> Result<Vec<VerificationReport>, String> {
    let params = ModelParams::symbolic(n).map_err(|e| e.to_string())?;
    match kind {
        KindArg::Classical => Ok(verify_classical(&build_classical(&params), conv)),
        KindArg::Quantum => {
            let ctx = Ctx::new(exec);
            let q = build_quantum(&params, &ctx, RungeLenzForm::Symmetrized).map_err(|e| e.to_string())?;
            verify_quantum(&q, &ctx, QuantumChecks::ALL).map_err(|e| e.to_string())
        }
    }
}

/// Drops convention-independent checks from a second-convention run so that
/// each id appears once when both conventions are reported together.
pub fn without_repeats(reports: Vec<VerificationReport>, conv: Convention) -> Vec<VerificationReport> {
    if conv == Convention::Standard {
        reports
    } else {
        reports.into_iter().filter(|r| r.convention.is_some()).collect()
    }
}

pub fn dump_path(r: &VerificationReport) -> String {
    format!("dumps/{}.txt", r.qualified_id())
}

fn entry(r: &VerificationReport, timings: bool) -> ResultEntry {
    let verdict_data = match &r.verdict {
        Verdict::Pass => Value::Null,
        Verdict::Residual { term_count, .. } => json!({ "term_count": term_count, "dump": dump_path(r) }),
        Verdict::Fitted { coefficients } => json!({
            "coefficients": coefficients.iter().map(|c| json!({
                "basis": c.basis,
                "fitted": c.fitted,
                "printed": c.printed,
                "matches_printed": c.matches_printed,
            })).collect::<Vec<_>>(),
            "self_validation_residual": 0,
        }),
    };
    let data = object([
        ("kind", json!(r.kind.name())),
        ("n", json!(r.n)),
        ("convention", r.convention.map(|c| json!(c.name())).unwrap_or(Value::Null)),
        ("note", r.note.as_ref().map(|s| json!(s)).unwrap_or(Value::Null)),
        ("detail", verdict_data),
        ("wall_ms", if timings { json!(r.wall.as_secs_f64() * 1e3) } else { Value::Null }),
    ]);
    ResultEntry::new(r.qualified_id(), r.verdict.name(), data)
}

fn find<'a>(reports: &'a [VerificationReport], kind: Kind, id: &str) -> Vec<&'a VerificationReport> {
    reports.iter().filter(|r| r.kind == kind && r.id == id).collect()
}

fn is_residual(r: &VerificationReport) -> bool {
    matches!(r.verdict, Verdict::Residual { .. })
}

fn evidence(reports: &[&VerificationReport]) -> Value {
    json!(reports
        .iter()
        .map(|r| json!({
            "id": r.qualified_id(),
            "verdict": r.verdict.name(),
            "term_count": match &r.verdict { Verdict::Residual { term_count, .. } => json!(term_count), _ => Value::Null },
        }))
        .collect::<Vec<_>>())
}

fn erratum(key: &str, subject: &str, printed: &str, finding: &str, confirmed: bool, ev: Value) -> ErratumEntry {
    ErratumEntry {
        key: key.into(),
        subject: subject.into(),
        printed: printed.into(),
        finding: finding.into(),
        status: if confirmed { "confirmed" } else { "not-reproduced" }.into(),
        evidence: ev,
        artifact: ErratumEntry::artifact_path(key),
    }
}

/// Ledger entries implied by a set of verification reports.
pub fn algebra_errata(reports: &[VerificationReport]) -> Vec<ErratumEntry> {
    let mut out = Vec::new();
    let classical_reversed: Vec<_> = reports
        .iter()
        .filter(|r| r.kind == Kind::Classical && r.convention == Some(Convention::Reversed))
        .filter(|r| r.id == "c_vs_printed" || r.id == "so_relations")
        .collect();
    if !classical_reversed.is_empty() {
        let confirmed = classical_reversed.iter().any(|r| is_residual(r));
        out.push(erratum(
            "poisson-bracket/sign-convention",
            "classical Poisson bracket convention",
            "{X, Y} = sum_i (dX/dp_i dY/dx_i - dX/dx_i dY/dp_i)",
            "with the bracket sign as stated, the printed closed form of C and the so(N-1) relations for N >= 4 \
             come out with the opposite sign; with {x_i, p_j} = delta_ij they hold exactly",
            confirmed,
            evidence(&classical_reversed),
        ));
    }
    let qc = find(reports, Kind::Quantum, "c_vs_printed");
    let qx = find(reports, Kind::Quantum, "c_vs_printed_xj");
    if !qc.is_empty() {
        let confirmed = qc.iter().all(|r| is_residual(r)) && qx.iter().all(|r| r.verdict.is_pass());
        let mut rows = qc.clone();
        rows.extend(qx);
        out.push(erratum(
            "commutator-c/first-sum-index",
            "quantum C = [A, B]",
            "first sum with x_i x_N p_i p_j p_N",
            "the computed commutator differs from the printed form; reading the first sum with x_i x_j makes \
             the two agree exactly",
            confirmed,
            evidence(&rows),
        ));
    }
    let rl: Vec<_> = reports.iter().filter(|r| r.id == "runge_lenz.forms").collect();
    if !rl.is_empty() {
        out.push(erratum(
            "runge-lenz/expanded-form",
            "N-th Runge-Lenz component",
            "expanded form x_N p^2 - sum x_i p_i p_N + ... written alongside the symmetrized form",
            "the expanded form is not equal to the symmetrized form (overall sign and potential term); B is \
             built from the symmetrized form",
            rl.iter().all(|r| is_residual(r)),
            evidence(&rl),
        ));
    }
    for (kind, key, printed, finding) in [
        (
            Kind::Classical,
            "casimir-classical/j2-coefficient",
            "coefficient 8 J^2 in front of A",
            "the printed Casimir is not central and fails its reduction; with 8 J^2 H it is central and reduces \
             exactly to the printed central-element expression",
        ),
        (
            Kind::Quantum,
            "casimir-quantum/h-power",
            "term -8 hbar^2 (c1 + c2) H^2 in the A coefficient",
            "with H^2 the Casimir does not reduce to the printed central-element expression; with H it is \
             central and reduces exactly",
        ),
    ] {
        let printed_rows: Vec<_> =
            reports.iter().filter(|r| r.kind == kind && r.id.starts_with("casimir_printed.")).collect();
        if printed_rows.is_empty() {
            continue;
        }
        let corrected: Vec<_> = reports.iter().filter(|r| r.kind == kind && r.id.starts_with("casimir.")).collect();
        let confirmed = printed_rows.iter().any(|r| is_residual(r))
            && corrected.iter().all(|r| r.verdict.is_pass() || r.verdict.fits_printed());
        let mut rows = printed_rows;
        rows.extend(corrected);
        out.push(erratum(key, "Casimir of the quadratic algebra", printed, finding, confirmed, evidence(&rows)));
    }
    let bad_fits: Vec<_> =
        reports.iter().filter(|r| matches!(r.verdict, Verdict::Fitted { .. }) && !r.verdict.fits_printed()).collect();
    if !bad_fits.is_empty() {
        out.push(erratum(
            "structure-constants/fit",
            "structure constants of the quadratic algebra",
            "printed coefficients of [A, C] and [B, C]",
            "fitted coefficients differ from the printed ones (see evidence)",
            true,
            evidence(&bad_fits),
        ));
    }
    let known = [
        "c_vs_printed",
        "so_relations",
        "runge_lenz.forms",
        "casimir_printed.central_A",
        "casimir_printed.central_B",
        "casimir_printed.reduction",
    ];
    for r in reports.iter().filter(|r| is_residual(r) && !known.contains(&r.id.as_str())) {
        let key = format!("identity/{}", r.qualified_id());
        out.push(erratum(&key, "algebraic identity", &r.id, "identity does not hold exactly", true, evidence(&[r])));
    }
    out.sort_by(|a, b| a.key.cmp(&b.key));
    out
}

/// Status implied by verification verdicts: any residual or unmatched fit is an erratum.
pub fn status_of(reports: &[VerificationReport]) -> Status {
    let clean = reports.iter().all(|r| match &r.verdict {
        Verdict::Pass => true,
        Verdict::Fitted { .. } => r.verdict.fits_printed(),
        Verdict::Residual { .. } => false,
    });
    if clean {
        Status::Ok
    } else {
        Status::Erratum
    }
}

/// Results, ledger and dump files for a batch of reports.
pub fn document(run: Value, reports: &[VerificationReport], timings: bool) -> (Document, Vec<(String, String)>) {
    let mut doc = Document::new(run);
    doc.results = reports.iter().map(|r| entry(r, timings)).collect();
    doc.errata = algebra_errata(reports);
    let dumps = reports
        .iter()
        .filter_map(|r| match &r.verdict {
            Verdict::Residual { dump, .. } => Some((dump_path(r), dump.clone())),
            _ => None,
        })
        .collect();
    (doc, dumps)
}

pub fn run(args: &VerifyArgs, run: Value, exec: Exec, timings: bool) -> Output {
    if !(MIN_N..=MAX_N).contains(&args.n) {
        let mut out = Output::new(Document::new(run), Status::Usage);
        out.diagnostic = Some(format!("--n must be between {MIN_N} and {MAX_N}, got {}", args.n));
        return out;
    }
    match reports(args.kind, args.n, convention(args.convention), exec) {
        Ok(reports) => {
            let (doc, dumps) = document(run, &reports, timings);
            let mut out = Output::new(doc, status_of(&reports));
            out.files = dumps;
            out.attach_evidence();
            out
        }
        Err(msg) => {
            let mut out = Output::new(Document::new(run), Status::ToolFailure);
            out.diagnostic = Some(msg);
            out
        }
    }
}
