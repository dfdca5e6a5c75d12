use qkepler_core::audit::*;
use qkepler_core::*;

use proptest::prelude::*;

const RC: SpectrumConvention = SpectrumConvention::Reconciled;

fn grid() -> Vec<Params> {
    let mut out = Vec::new();
    for n in [3usize, 4, 5] {
        for (c1, c2) in [(0.0, 0.0), (0.1, 0.2), (1.0, 2.0)] {
            out.push(Params::new(n, 1.0, c1, c2, 1.0).unwrap());
        }
    }
    out
}

fn assert_representation(p: &Params, i: u32, q: u32, set: ConstraintSet) {
    let sol = solve_constraint_set(p, i, q, (1, 1), set, RC).unwrap();
    let e = energy_spherical(p, q + i + 1, i).unwrap();
    assert!(((sol.energy - e) / e).abs() < 1e-12, "{p:?} I={i} p={q} {set:?}");
    assert!(sol.boundary.0 < 1e-12 && sol.boundary.1 < 1e-12, "{:?}", sol.boundary);
    assert!(sol.unitary, "{p:?} I={i} p={q} {set:?}");
    let rep = representation_check(&sol, p);
    assert!(rep.positive && rep.dimension == q + 1 && rep.degeneracy == q + 1);
}

#[test]
fn constraint_sets_reproduce_spectrum_on_grid() {
    for p in grid() {
        for i in [0u32, 1, 2] {
            for q in 0..=5u32 {
                for set in ConstraintSet::ALL {
                    assert_representation(&p, i, q, set);
                }
            }
        }
    }
}

#[test]
fn parabolic_and_spherical_energies_agree() {
    for p in grid() {
        for i in [0u32, 1, 2] {
            for q in 0..=5u32 {
                let e = energy_spherical(&p, q + i + 1, i).unwrap();
                for n1 in 0..=q {
                    assert_eq!(energy_parabolic(&p, n1, q - n1, i, RC).unwrap(), e);
                    let printed = energy_parabolic(&p, n1, q - n1, i, SpectrumConvention::AsPrinted).unwrap();
                    assert!((printed / e - 2.0).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn printed_m_forms_are_mutually_inconsistent() {
    for p in grid() {
        for i in [0u32, 1, 2] {
            let m = m_values(&p, i).unwrap();
            assert!((m.from_square.0 - 2.0 * m.reconciled.0).abs() < 1e-12);
            assert!((m.from_delta.1 + m.reconciled.1).abs() < 1e-12);
        }
    }
}

#[test]
fn as_printed_sets_miss_the_spectrum() {
    let p = Params::new(4, 1.0, 0.1, 0.2, 1.0).unwrap();
    let e = energy_spherical(&p, 2, 1).unwrap();
    for set in ConstraintSet::ALL {
        let sol = solve_constraint_set(&p, 1, 0, (1, 1), set, SpectrumConvention::AsPrinted).unwrap();
        assert!(!sol.warnings.is_empty() || ((sol.energy - e) / e).abs() > 1e-3, "{set:?}");
    }
}

#[test]
fn expanded_and_factorized_structure_functions_agree() {
    let mut points = Vec::new();
    for p in grid() {
        for (i, x, u, e) in [(0u32, 0.5, 0.3, -0.2), (1, 2.0, 1.1, -0.05), (2, 3.5, -0.4, -0.7)] {
            points.push(PhiPoint { params: p, i, x, u, energy: e });
        }
    }
    for c in phi_comparison(&points).unwrap() {
        assert!(c.agree, "{c:?}");
    }
}

#[test]
fn every_spectral_audit_finds_its_discrepancy() {
    let audits = spectral_audits().unwrap();
    let keys: Vec<_> = audits.iter().map(|a| a.key).collect();
    assert_eq!(
        keys,
        [
            "parabolic-energy/factor2",
            "m-formula/inconsistent",
            "constraint-sets/as-printed",
            "delta/coupling-scale",
            "angular-wavefunction/jacobi-indices",
            "angular-wavefunction/normalization",
            "radial-wavefunction/normalization",
            "parabolic/separation-relations",
        ]
    );
    for a in &audits {
        assert!(a.discrepancy, "{}: {:#?}", a.key, a.rows);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sets_match_spherical_energy(
        n in 3usize..=6, c0 in 0.2f64..3.0, c1 in 0.0f64..3.0, c2 in 0.0f64..3.0,
        hbar in 0.3f64..2.0, i in 0u32..4, q in 0u32..8,
    ) {
        let p = Params::new(n, c0, c1, c2, hbar).unwrap();
        let e = energy_spherical(&p, q + i + 1, i).unwrap();
        for set in ConstraintSet::ALL {
            let sol = solve_constraint_set(&p, i, q, (1, 1), set, RC).unwrap();
            prop_assert!(((sol.energy - e) / e).abs() < 1e-12);
            prop_assert!(sol.boundary.0 < 1e-12 && sol.boundary.1 < 1e-12);
            prop_assert!(sol.unitary);
        }
    }

    #[test]
    fn energies_increase_with_n(n in 3usize..=6, c1 in 0.0f64..3.0, c2 in 0.0f64..3.0, i in 0u32..4, q in 0u32..10) {
        let p = Params::new(n, 1.0, c1, c2, 1.0).unwrap();
        let lo = energy_spherical(&p, q + i + 1, i).unwrap();
        let hi = energy_spherical(&p, q + i + 2, i).unwrap();
        prop_assert!(lo < hi && hi < 0.0);
    }

    #[test]
    fn coupling_swap_symmetry(n in 3usize..=6, c1 in 0.0f64..3.0, c2 in 0.0f64..3.0, i in 0u32..4, l in 0u32..4) {
        let p = Params::new(n, 1.0, c1, c2, 1.0).unwrap();
        let q = p.with_couplings(c2, c1);
        let (a, b) = (separation_constant_a(&p, i + l, i).unwrap(), separation_constant_a(&q, i + l, i).unwrap());
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn structure_function_forms_agree(
        n in 3usize..=6, c1 in 0.0f64..2.0, c2 in 0.0f64..2.0, hbar in 0.5f64..1.5,
        i in 0u32..3, x in 0.0f64..6.0, u in -1.0f64..2.0, e in -1.0f64..-0.01,
    ) {
        let p = Params::new(n, 1.0, c1, c2, hbar).unwrap();
        let c = &phi_comparison(&[PhiPoint { params: p, i, x, u, energy: e }]).unwrap()[0];
        prop_assert!(c.agree, "{c:?}");
    }
}
