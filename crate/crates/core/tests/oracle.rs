use qkepler_core::oracle::series::{hyp1f1_exact, jacobi_hypergeometric, jacobi_rodrigues};
use qkepler_core::oracle::*;
use qkepler_core::special::{hyp1f1, jacobi_p};
use qkepler_core::*;

use proptest::prelude::*;

fn grid() -> Vec<Params> {
    let mut out = Vec::new();
    for n in [3usize, 4, 5] {
        for (c1, c2) in [(0.0, 0.0), (0.1, 0.2), (1.0, 2.0)] {
            out.push(Params::new(n, 1.0, c1, c2, 1.0).unwrap());
        }
    }
    out
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn hydrogen_anchors() {
    let res = solve_radial(&RadialProblem::new(Params::hydrogen(3), 0.0), 2).unwrap();
    assert!((res.extrapolated[0] + 0.5).abs() < 1e-4);
    assert!((res.extrapolated[1] + 0.125).abs() < 1e-4);
    let a = separation_constant_a(&Params::hydrogen(5), 0, 0).unwrap();
    let res = solve_radial(&RadialProblem::new(Params::hydrogen(5), a), 1).unwrap();
    assert!((res.extrapolated[0] + 0.125).abs() < 1e-4);
}

#[test]
fn radial_oracle_reproduces_closed_form_on_grid() {
    for p in grid() {
        for i in [0u32, 1] {
            let a = separation_constant_a(&p, i, i).unwrap();
            let res = solve_radial(&RadialProblem::new(p, a), 3).unwrap();
            assert!(res.warnings.is_empty());
            for k in 0..3 {
                let e = energy_spherical(&p, i + 1 + k as u32, i).unwrap();
                assert!(rel(res.extrapolated[k], e) < 1e-4, "{p:?} I={i} level {k}: {} vs {e}", res.extrapolated[k]);
            }
        }
    }
}

#[test]
fn angular_oracle_reproduces_separation_constant() {
    for p in grid() {
        for i in [0u32, 1, 2] {
            let res = solve_angular(&AngularProblem::new(p, i), 3).unwrap();
            for k in 0..3u32 {
                let a = separation_constant_a(&p, i + k, i).unwrap();
                let got = res.extrapolated[k as usize];
                assert!((got - a).abs() < 1e-6, "{p:?} I={i} l={}: {got} vs {a}", i + k);
            }
        }
    }
}

#[test]
fn angular_oracle_free_spectra() {
    let res = solve_angular(&AngularProblem::new(Params::hydrogen(3), 0), 3).unwrap();
    for (l, a) in res.extrapolated.iter().enumerate() {
        assert!((a - (l * (l + 1)) as f64).abs() < 1e-6);
    }
    let res = solve_angular(&AngularProblem::new(Params::hydrogen(5), 1), 3).unwrap();
    for (k, a) in res.extrapolated.iter().enumerate() {
        let l = (k + 1) as f64;
        assert!((a - l * (l + 3.0)).abs() < 1e-6);
    }
}

#[test]
fn frozen_oracle_values() {
    let p = Params::new(4, 1.0, 0.1, 0.2, 1.0).unwrap();
    let ang = solve_angular(&AngularProblem::new(p, 1), 3).unwrap();
    let frozen_a = [3.7836403866, 9.1579473665, 16.5322543456];
    for (got, want) in ang.extrapolated.iter().zip(frozen_a) {
        assert!((got - want).abs() < 1e-8, "{got} vs {want}");
    }
    let rad = solve_radial(&RadialProblem::new(p, ang.extrapolated[0]), 3).unwrap();
    let frozen_e = [-0.06924446378, -0.03677795445, -0.02275892021];
    for (got, want) in rad.extrapolated.iter().zip(frozen_e) {
        assert!(rel(*got, want) < 1e-8, "{got} vs {want}");
    }
}

#[test]
fn richardson_ratio_is_second_order() {
    for p in [Params::hydrogen(3), Params::new(4, 1.0, 0.1, 0.2, 1.0).unwrap()] {
        let a = separation_constant_a(&p, 1, 1).unwrap();
        let res = solve_radial(&RadialProblem::new(p, a), 3).unwrap();
        for r in &res.convergence_ratio {
            assert!((3.5..=4.5).contains(r), "{r}");
        }
    }
}

#[test]
fn box_independence() {
    let p = Params::new(3, 1.0, 0.1, 0.2, 1.0).unwrap();
    let a = separation_constant_a(&p, 0, 0).unwrap();
    let base = RadialProblem::new(p, a);
    let r_max = base.default_r_max(3);
    let small = solve_radial(&RadialProblem { r_max: Some(r_max), ..base.clone() }, 3).unwrap();
    let large =
        solve_radial(&RadialProblem { r_max: Some(2.0 * r_max), points: 2 * base.points + 1, ..base }, 3).unwrap();
    for (s, l) in small.extrapolated.iter().zip(&large.extrapolated) {
        if s.abs() >= 0.01 {
            assert!((s - l).abs() < 1e-8, "{s} vs {l}");
        }
    }
}

#[test]
fn coupling_swap_leaves_spectrum_invariant() {
    let p = Params::new(4, 1.0, 0.3, 1.1, 1.0).unwrap();
    let q = p.with_couplings(1.1, 0.3);
    for i in [0u32, 1] {
        let ap = solve_angular(&AngularProblem::new(p, i), 1).unwrap().extrapolated[0];
        let aq = solve_angular(&AngularProblem::new(q, i), 1).unwrap().extrapolated[0];
        assert!((ap - aq).abs() < 1e-8);
        let ep = solve_radial(&RadialProblem::new(p, ap), 2).unwrap().extrapolated;
        let eq = solve_radial(&RadialProblem::new(q, aq), 2).unwrap().extrapolated;
        for (x, y) in ep.iter().zip(&eq) {
            assert!(rel(*x, *y) < 1e-9);
        }
    }
}

#[test]
fn angular_then_radial_matches_formula_at_other_hbar() {
    let p = Params::new(5, 1.3, 0.4, 0.25, 0.8).unwrap();
    let a = solve_angular(&AngularProblem::new(p, 1), 1).unwrap().extrapolated[0];
    let e = solve_radial(&RadialProblem::new(p, a), 2).unwrap().extrapolated;
    assert!(rel(e[0], energy_spherical(&p, 2, 1).unwrap()) < 1e-4);
    assert!(rel(e[1], energy_spherical(&p, 3, 1).unwrap()) < 1e-4);
}

#[test]
fn fall_to_center_is_an_error() {
    let p = RadialProblem::new(Params::hydrogen(3), -0.5);
    assert!(matches!(solve_radial(&p, 1), Err(CoreError::FallToCenter { .. })));
}

#[test]
fn compare_spectrum_examples() {
    let lines = compare_spectrum(&Params::hydrogen(3), 0, 1, CompareOptions::default()).unwrap();
    assert!(lines[0].columns().iter().all(|e| (e + 0.5).abs() < 1e-4));
    let p = Params::new(4, 1.0, 0.1, 0.2, 1.0).unwrap();
    let lines = compare_spectrum(&p, 1, 2, CompareOptions::default()).unwrap();
    assert_eq!(lines[1].n, 3);
    assert!(lines.iter().all(|l| l.badge < BADGE_TOL));
    let opts = CompareOptions { with_printed: true, ..CompareOptions::default() };
    for line in compare_spectrum(&p, 1, 2, opts).unwrap() {
        let printed = line.e_parabolic_printed.unwrap();
        assert!((printed / line.e_formula - 2.0).abs() < 1e-12);
    }
}

#[test]
fn sequential_and_parallel_compare_agree() {
    let p = Params::new(5, 1.0, 0.1, 0.2, 1.0).unwrap();
    let seq =
        compare_spectrum(&p, 1, 3, CompareOptions { exec: Exec::Sequential, ..CompareOptions::default() }).unwrap();
    let par = compare_spectrum(&p, 1, 3, CompareOptions { exec: Exec::Parallel, ..CompareOptions::default() }).unwrap();
    assert_eq!(seq, par);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_matches_brute_force(n in 0u32..=10, alpha in -0.9f64..6.0, beta in -0.9f64..6.0, x in -1.0f64..1.0) {
        let rec = jacobi_p(n, alpha, beta, x);
        let (rod, magnitude) = jacobi_rodrigues(n, alpha, beta, x);
        let (hyp, hyp_magnitude) = jacobi_hypergeometric(n, alpha, beta, x);
        // both oracles are alternating sums; compare on the scale of their terms
        let scale = rec.abs().max(magnitude).max(hyp_magnitude).max(1.0);
        prop_assert!((rec - rod).abs() <= 1e-12 * scale, "{rec} vs {rod}");
        prop_assert!((rec - hyp).abs() <= 1e-12 * scale, "{rec} vs {hyp}");
    }

    #[test]
    fn terminating_hyp1f1_matches_exact_sum(n in 0u32..=10, b in 0.5f64..8.0, z in 0.0f64..12.0) {
        let a = -(n as f64);
        let fast = hyp1f1(a, b, z).unwrap();
        let exact = hyp1f1_exact(a, b, z, 0);
        let scale = (0..=n).fold((1.0f64, 1.0f64), |(t, s), k| {
            if k == 0 { (1.0, 1.0) } else {
                let t = t * ((a + k as f64 - 1.0) * z / ((b + k as f64 - 1.0) * k as f64)).abs();
                (t, s + t)
            }
        }).1;
        prop_assert!((fast - exact).abs() <= 1e-12 * scale, "{fast} vs {exact}");
        // summing past the last nonzero term changes nothing
        prop_assert_eq!(exact, hyp1f1_exact(a, b, z, n + 20));
    }

    #[test]
    fn convergent_hyp1f1_matches_exact_series(a in 0.1f64..4.0, b in 0.5f64..6.0, z in -6.0f64..6.0) {
        let fast = hyp1f1(a, b, z).unwrap();
        let exact = hyp1f1_exact(a, b, z, 120);
        prop_assert!((fast - exact).abs() <= 1e-12 * exact.abs().max(1.0), "{fast} vs {exact}");
    }
}
