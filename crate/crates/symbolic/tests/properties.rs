use proptest::prelude::*;
use qkepler_symbolic::*;

const N: usize = 3;

fn leaf() -> impl Strategy<Value = RawExpr> {
    prop_oneof![
        (-3i64..=3).prop_map(RawExpr::int),
        (0..N).prop_map(RawExpr::x),
        (0..N).prop_map(RawExpr::p),
        Just(RawExpr::R),
        Just(RawExpr::Param(Param::C0)),
        Just(RawExpr::Param(Param::C1)),
        Just(RawExpr::Param(Param::I)),
        Just(RawExpr::int(1) / RawExpr::R),
        Just(RawExpr::int(1) / (RawExpr::R + RawExpr::x(N - 1))),
        Just(RawExpr::int(1) / (RawExpr::R - RawExpr::x(N - 1))),
    ]
}

fn raw() -> impl Strategy<Value = RawExpr> {
    leaf().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(RawExpr::Add),
            prop::collection::vec(inner.clone(), 2..3).prop_map(RawExpr::Mul),
            inner.prop_map(|e| -e),
        ]
    })
}

fn position_raw() -> impl Strategy<Value = RawExpr> {
    let leaf = prop_oneof![
        (-3i64..=3).prop_map(RawExpr::int),
        (0..N).prop_map(RawExpr::x),
        Just(RawExpr::R),
        Just(RawExpr::Param(Param::C2)),
        Just(RawExpr::int(1) / (RawExpr::R + RawExpr::x(N - 1))),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..3).prop_map(RawExpr::Add),
            prop::collection::vec(inner, 2..3).prop_map(RawExpr::Mul),
        ]
    })
}

fn norm(e: &RawExpr) -> Expr {
    normalize(e, N).unwrap()
}

fn point() -> EvalPoint {
    EvalPoint {
        x: vec![0.31, -0.77, 0.52],
        p: vec![1.3, 0.4, -0.9],
        params: ParamValues { hbar: 0.7, c0: 1.1, c1: 0.3, c2: 0.45 },
    }
}

fn op(e: &RawExpr, k: usize) -> DiffOp {
    // f ∂_k + g with f, g position functions
    let f = norm(e);
    DiffOp::d(N, k).premul(&f).unwrap().add(&DiffOp::mult(f.mul(&Expr::x(N, k))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent(e in raw()) {
        let a = norm(&e);
        prop_assert_eq!(norm(&a.to_raw()), a);
    }

    #[test]
    fn normalization_preserves_value(e in raw()) {
        let pt = point();
        let direct = e.eval(&pt);
        let canon = norm(&e).eval(&pt).unwrap();
        let scale = 1.0 + direct.norm();
        prop_assert!((direct - canon).norm() <= 1e-9 * scale, "{direct} vs {canon}");
    }

    #[test]
    fn no_zero_divisors(a in raw(), b in raw()) {
        let (x, y) = (norm(&a), norm(&b));
        if x.mul(&y).is_zero() {
            prop_assert!(x.is_zero() || y.is_zero());
        }
    }

    #[test]
    fn bracket_is_antisymmetric(a in raw(), b in raw()) {
        let (x, y) = (norm(&a), norm(&b));
        for c in [Convention::Standard, Convention::Reversed] {
            prop_assert!(poisson_bracket(&x, &y, c).add(&poisson_bracket(&y, &x, c)).is_zero());
        }
    }

    #[test]
    fn bracket_satisfies_jacobi(a in raw(), b in raw(), c in raw()) {
        let (x, y, z) = (norm(&a), norm(&b), norm(&c));
        let cv = Convention::Reversed;
        let j = poisson_bracket(&x, &poisson_bracket(&y, &z, cv), cv)
            .add(&poisson_bracket(&y, &poisson_bracket(&z, &x, cv), cv))
            .add(&poisson_bracket(&z, &poisson_bracket(&x, &y, cv), cv));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn bracket_obeys_leibniz(a in raw(), b in raw(), c in raw()) {
        let (x, y, z) = (norm(&a), norm(&b), norm(&c));
        let cv = Convention::Standard;
        let lhs = poisson_bracket(&x, &y.mul(&z), cv);
        let rhs = poisson_bracket(&x, &y, cv).mul(&z).add(&y.mul(&poisson_bracket(&x, &z, cv)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_partials_commute(e in raw()) {
        let x = norm(&e);
        let a = x.partial(Var::X(0)).partial(Var::X(2));
        let b = x.partial(Var::X(2)).partial(Var::X(0));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn commutators_satisfy_jacobi(f in position_raw(), g in position_raw(), h in position_raw()) {
        let t = CancelToken::new();
        let ex = Exec::Sequential;
        let (a, b, c) = (op(&f, 0), op(&g, 2), op(&h, 1));
        let com = |p: &DiffOp, q: &DiffOp| commutator(p, q, ex, &t).unwrap();
        let j = com(&a, &com(&b, &c)).add(&com(&b, &com(&c, &a))).add(&com(&c, &com(&a, &b)));
        prop_assert!(j.is_zero());
        prop_assert!(com(&a, &b).add(&com(&b, &a)).is_zero());
    }

    #[test]
    fn composition_is_associative_and_matches_action(f in position_raw(), g in position_raw(), h in position_raw()) {
        let t = CancelToken::new();
        let ex = Exec::Parallel;
        let (a, b) = (op(&f, 0), op(&g, 2));
        let ab = compose(&a, &b, ex, &t).unwrap();
        let u = norm(&h);
        prop_assert_eq!(ab.apply(&u), a.apply(&b.apply(&u)));
        let c = op(&h, 1);
        let l = compose(&ab, &c, ex, &t).unwrap();
        let r = compose(&a, &compose(&b, &c, ex, &t).unwrap(), ex, &t).unwrap();
        prop_assert_eq!(l, r);
    }
}
