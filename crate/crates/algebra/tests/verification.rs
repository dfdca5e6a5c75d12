use qkepler_algebra::*;
use qkepler_symbolic::{Convention, Exec};

fn verdicts(reports: &[VerificationReport]) -> Vec<(String, &'static str)> {
    reports.iter().map(|r| (r.id.clone(), r.verdict.name())).collect()
}

fn find<'a>(reports: &'a [VerificationReport], id: &str) -> &'a VerificationReport {
    reports.iter().find(|r| r.id == id).unwrap_or_else(|| panic!("missing {id}"))
}

const EXPECTED_RESIDUAL_CLASSICAL: [&str; 3] =
    ["runge_lenz.forms", "casimir_printed.central_B", "casimir_printed.reduction"];

#[test]
fn classical_standard_convention() {
    for n in 3..=5 {
        let s = build_classical(&ModelParams::symbolic(n).unwrap());
        let reports = verify_classical(&s, Convention::Standard);
        for (id, v) in verdicts(&reports) {
            let expected = if EXPECTED_RESIDUAL_CLASSICAL.contains(&id.as_str()) {
                "residual"
            } else if id.starts_with("fit.") {
                "fitted"
            } else {
                "pass"
            };
            assert_eq!(v, expected, "n={n} {id}");
        }
        assert!(find(&reports, "fit.AC").verdict.fits_printed());
        assert!(find(&reports, "fit.BC").verdict.fits_printed());
    }
}

#[test]
fn classical_reversed_convention_flips_c_and_so() {
    for n in 3..=5 {
        let s = build_classical(&ModelParams::symbolic(n).unwrap());
        let reports = verify_classical(&s, Convention::Reversed);
        assert_eq!(find(&reports, "c_vs_printed").verdict.name(), "residual");
        assert!(find(&reports, "relation.AC").verdict.is_pass());
        assert!(find(&reports, "relation.BC").verdict.is_pass());
        assert!(find(&reports, "casimir.central_A").verdict.is_pass());
        assert!(find(&reports, "casimir.central_B").verdict.is_pass());
        let so = find(&reports, "so_relations");
        assert_eq!(so.verdict.is_pass(), n == 3, "n={n}");
    }
}

#[test]
fn classical_c_changes_sign_with_convention() {
    let s = build_classical(&ModelParams::symbolic(4).unwrap());
    let a = classical_c(&s, Convention::Standard);
    let b = classical_c(&s, Convention::Reversed);
    assert!(a.add(&b).is_zero());
}

fn quantum(n: usize) -> (QuantumSet, Ctx) {
    let ctx = Ctx::new(Exec::Parallel);
    let q = build_quantum(&ModelParams::symbolic(n).unwrap(), &ctx, RungeLenzForm::Symmetrized).unwrap();
    (q, ctx)
}

#[test]
fn quantum_full_suite() {
    for n in 3..=5 {
        let (q, ctx) = quantum(n);
        let reports = verify_quantum(&q, &ctx, QuantumChecks::ALL).unwrap();
        for r in &reports {
            let expected = match r.id.as_str() {
                "c_vs_printed" | "runge_lenz.forms" | "casimir_printed.reduction" => "residual",
                id if id.starts_with("fit.") || id == "casimir.reduction_fit" => "fitted",
                _ => "pass",
            };
            assert_eq!(r.verdict.name(), expected, "n={n} {}", r.id);
            if expected == "fitted" {
                assert!(r.verdict.fits_printed(), "n={n} {}: {:?}", r.id, r.verdict);
            }
        }
    }
}

#[test]
fn quantum_fitted_coefficients_frozen() {
    let (q, ctx) = quantum(4);
    let c = ctx.comm(&q.a, &q.b).unwrap();
    let ac = fit_structure_constants_quantum(&q, &c, FitTarget::AC, &ctx).unwrap();
    let bc = fit_structure_constants_quantum(&q, &c, FitTarget::BC, &ctx).unwrap();
    let strings = |r: &VerificationReport| match &r.verdict {
        Verdict::Fitted { coefficients } => coefficients.iter().map(|c| c.fitted.clone()).collect::<Vec<_>>(),
        v => panic!("{v:?}"),
    };
    assert_eq!(strings(&ac), ["2*hbar^2", "3*hbar^4", "0", "-4*hbar^2*c0*c1 + 4*hbar^2*c0*c2"]);
    assert_eq!(
        strings(&bc),
        ["-2*hbar^2", "8*hbar^2", "-4*hbar^2", "9*hbar^4 - 8*hbar^2*c1 - 8*hbar^2*c2", "2*hbar^2*c0^2"]
    );
}

#[test]
fn sequential_and_parallel_agree() {
    let p = ModelParams::symbolic(4).unwrap();
    let seq = Ctx::new(Exec::Sequential);
    let par = Ctx::new(Exec::Parallel);
    let qs = build_quantum(&p, &seq, RungeLenzForm::Symmetrized).unwrap();
    let qp = build_quantum(&p, &par, RungeLenzForm::Symmetrized).unwrap();
    let cs = seq.comm(&qs.a, &qs.b).unwrap();
    let cp = par.comm(&qp.a, &qp.b).unwrap();
    assert_eq!(cs.dump(), cp.dump());
}

#[test]
fn residual_dump_is_canonical_and_nonempty() {
    let (q, ctx) = quantum(3);
    let c = ctx.comm(&q.a, &q.b).unwrap();
    let reports = check_quadratic_relations_quantum(&q, &c, &ctx).unwrap();
    match &find(&reports, "c_vs_printed").verdict {
        Verdict::Residual { term_count, dump } => {
            assert_eq!(*term_count, 11);
            assert!(dump.lines().count() > 0);
        }
        v => panic!("{v:?}"),
    }
}
