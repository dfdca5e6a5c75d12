use qkepler_core::wavefunctions::*;
use qkepler_core::*;

fn p(n: usize, c1: f64, c2: f64) -> Params {
    Params::new(n, 1.0, c1, c2, 1.0).unwrap()
}

/// Step `1e-3` times the local length scale `min(t, 1)`.
fn step(t: f64) -> f64 {
    1e-3 * t.min(1.0)
}

#[test]
fn angular_residual_example() {
    let s = build_angular(&p(4, 0.1, 0.2), 2, 1, AngularForm::Corrected).unwrap();
    let r = s.residual(std::f64::consts::FRAC_PI_3, 1e-3).unwrap();
    assert!(r.relative < 1e-8, "{r:?}");
}

#[test]
fn printed_angular_indices_fail_away_from_three_dimensions() {
    let s = build_angular(&p(4, 0.1, 0.2), 2, 1, AngularForm::AsPrinted).unwrap();
    assert!(s.residual(std::f64::consts::FRAC_PI_3, 1e-3).unwrap().relative > 1e-4);
    // at l = I the Jacobi factor is constant and the indices do not matter
    let s = build_angular(&p(5, 0.1, 0.2), 1, 1, AngularForm::AsPrinted).unwrap();
    assert!(s.residual(1.0, 1e-3).unwrap().relative < 1e-8);
    // in three dimensions the two forms coincide
    let a = build_angular(&p(3, 0.1, 0.2), 3, 1, AngularForm::AsPrinted).unwrap();
    let b = build_angular(&p(3, 0.1, 0.2), 3, 1, AngularForm::Corrected).unwrap();
    assert_eq!(a.eval(0.7), b.eval(0.7));
}

#[test]
fn angular_endpoint_exponent() {
    let s = build_angular(&p(4, 0.3, 0.5), 2, 1, AngularForm::Corrected).unwrap();
    let b = (s.delta.1 + 1.0) / 2.0;
    let limit = |phi: f64| s.eval(phi) / (1.0 - phi.cos()).powf(b);
    let (x, y) = (limit(1e-3), limit(1e-4));
    assert!(x != 0.0 && ((x - y) / y).abs() < 1e-5);
}

#[test]
fn radial_residual_example() {
    let s = build_radial(&p(5, 0.1, 0.2), 3, 1, 0).unwrap();
    for r in [0.5, 1.0, 2.0, 5.0] {
        let res = s.residual(r, step(r)).unwrap();
        assert!(res.relative < 1e-8, "{res:?}");
    }
}

#[test]
fn parabolic_residual_example() {
    let s = build_parabolic(&p(3, 0.1, 0.2), 1, 0, 0).unwrap();
    for t in [0.5, 1.0, 2.0] {
        let res = s.residual(1, t, step(t), ParabolicRelations::Reconciled);
        assert!(res.relative < 1e-8, "{res:?}");
        assert!(s.residual(1, t, step(t), ParabolicRelations::AsPrinted).relative > 1e-3);
    }
}

/// Twenty cases split over the three solution families, all at interior points.
#[test]
fn residual_grid() {
    let mut cases = 0;
    for n in [3usize, 4, 5] {
        let q = p(n, 0.1, 0.2);
        for (l, i) in [(2u32, 1u32), (3, 0)] {
            let s = build_angular(&q, l, i, AngularForm::Corrected).unwrap();
            for phi in [0.4, 1.2, 2.6] {
                assert!(s.residual(phi, 1e-3).unwrap().relative < 1e-8);
            }
            cases += 1;
        }
        for (nn, l, i) in [(2u32, 1u32, 1u32), (4, 2, 0)] {
            let s = build_radial(&q, nn, l, i).unwrap();
            for r in [0.5, 2.0, 6.0] {
                assert!(s.residual(r, step(r)).unwrap().relative < 1e-8);
            }
            cases += 1;
        }
        for (n1, n2, i) in [(0u32, 2u32, 1u32), (2, 1, 0)] {
            let s = build_parabolic(&q, n1, n2, i).unwrap();
            for which in [1, 2] {
                for t in [0.5, 2.0] {
                    assert!(s.residual(which, t, step(t), ParabolicRelations::Reconciled).relative < 1e-8);
                }
            }
            cases += 1;
        }
    }
    let s = build_radial(&p(3, 1.0, 2.0), 3, 0, 0).unwrap();
    assert!(s.residual(1.5, step(1.5)).unwrap().relative < 1e-8);
    let s = build_angular(&p(5, 1.0, 2.0), 3, 2, AngularForm::Corrected).unwrap();
    assert!(s.residual(1.5, 1e-3).unwrap().relative < 1e-8);
    cases += 2;
    assert_eq!(cases, 20);
}

#[test]
fn residuals_converge_at_fourth_order() {
    let q = p(4, 0.1, 0.2);
    let radial = build_radial(&q, 3, 1, 0).unwrap();
    let angular = build_angular(&q, 3, 1, AngularForm::Corrected).unwrap();
    let parabolic = build_parabolic(&q, 1, 2, 1).unwrap();
    for t in [0.5f64, 1.0, 2.0] {
        let h = 0.1 * t.min(1.0);
        let ratios = [
            radial.residual(t, h).unwrap().residual / radial.residual(t, h / 2.0).unwrap().residual,
            angular.residual(t, h).unwrap().residual / angular.residual(t, h / 2.0).unwrap().residual,
            parabolic.residual(2, t, h, ParabolicRelations::Reconciled).residual
                / parabolic.residual(2, t, h / 2.0, ParabolicRelations::Reconciled).residual,
        ];
        for ratio in ratios {
            assert!((12.0..=20.0).contains(&ratio), "t={t}: {ratio}");
        }
    }
}

#[test]
fn node_counts() {
    let q = p(4, 0.1, 0.2);
    for (n, l) in [(1u32, 0u32), (3, 0), (4, 1), (5, 2)] {
        assert_eq!(build_radial(&q, n, l, 0).unwrap().nodes() as u32, n - l - 1);
    }
    let s = build_parabolic(&q, 3, 1, 1).unwrap();
    assert_eq!((s.nodes(1), s.nodes(2)), (3, 1));
}

#[test]
fn hydrogen_normalization() {
    let s = build_radial(&Params::hydrogen(3), 1, 0, 0).unwrap().with_constant(2.0);
    assert!((s.norm().unwrap().squared_norm - 1.0).abs() < 1e-10);
    let legendre =
        build_angular(&Params::hydrogen(3), 1, 0, AngularForm::Corrected).unwrap().with_constant(1.5f64.sqrt());
    assert!((legendre.norm().unwrap().squared_norm - 1.0).abs() < 1e-10);
}

#[test]
fn printed_radial_constant_audit() {
    // N = 3: the printed constant (with |c0'|^{3/2}) is exact
    let s = build_radial(&p(3, 0.1, 0.2), 2, 1, 0).unwrap();
    let report = s.norm().unwrap();
    assert!((report.ratio - 1.0).abs() < 1e-10, "{report:?}");
    // N = 4: it is not, and the computed constant normalizes
    let s = build_radial(&p(4, 0.1, 0.2), 2, 1, 0).unwrap();
    let report = s.norm().unwrap();
    assert!((report.ratio - 1.0).abs() > 1e-2);
    let fixed = s.with_constant(report.computed_constant).norm().unwrap();
    assert!((fixed.squared_norm - 1.0).abs() < 1e-10);
}

#[test]
fn printed_angular_constant_is_off_by_azimuthal_factor_in_three_dimensions() {
    for (l, i) in [(0u32, 0u32), (2, 1), (3, 2)] {
        let s = build_angular(&p(3, 0.1, 0.2), l, i, AngularForm::Corrected).unwrap();
        let report = s.norm().unwrap();
        assert!((report.squared_norm * 2.0 * std::f64::consts::PI - 1.0).abs() < 1e-9, "{report:?}");
    }
}

#[test]
fn radial_orthogonality() {
    for (n, c1, c2) in [(3usize, 0.1, 0.2), (4, 1.0, 2.0), (5, 0.1, 0.2)] {
        let q = p(n, c1, c2);
        for (l, i) in [(0u32, 0u32), (1, 1), (2, 0)] {
            let states: Vec<_> = (l + 1..l + 4).map(|nn| build_radial(&q, nn, l, i).unwrap()).collect();
            for a in 0..states.len() {
                for b in a + 1..states.len() {
                    let o = radial_overlap(&states[a], &states[b]).unwrap();
                    assert!(o.abs() < 1e-8, "N={n} l={l}: {o}");
                }
            }
        }
    }
}

#[test]
fn invalid_quantum_numbers() {
    assert!(matches!(build_radial(&Params::hydrogen(3), 1, 1, 0), Err(CoreError::QuantumNumbers(_))));
    assert!(matches!(
        build_angular(&Params::hydrogen(3), 0, 1, AngularForm::AsPrinted),
        Err(CoreError::QuantumNumbers(_))
    ));
}
