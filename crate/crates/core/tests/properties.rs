use proptest::prelude::*;
use quadstab::exact::{compose_affine, rat, Poly1, Poly3, Rational, RationalMatrix};
use quadstab::fixpoint::{contraction_check, gen_metric, Branch, GenMetricValue, GridSpec};
use quadstab::funceq::{
    biadditive_form_exact, residual_main_exact, symbolic_residual, Coupling, EquationId, FunctionExpr,
};
use quadstab::stability::{
    bound_formulas_agree, check_hypothesis, empirical_control_fit, lipschitz_for_power, run_experiment,
    sample_triples, weight_scaling_gap, ControlFamily, ControlFunction, ControlSpec, StabilityConfig, Verdict,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn poly1(max_degree: usize) -> impl Strategy<Value = Poly1> {
    prop::collection::vec(small_rational(), 1..=max_degree + 1).prop_map(Poly1::from_coeffs)
}

fn point() -> impl Strategy<Value = [Rational; 3]> {
    (small_rational(), small_rational(), small_rational()).prop_map(|(x, y, z)| [x, y, z])
}

fn coupling() -> impl Strategy<Value = Coupling> {
    prop_oneof![Just(-3i64), Just(-2), Just(2), Just(3), Just(5)].prop_map(|c| Coupling::new(c).unwrap())
}

fn grid() -> GridSpec {
    GridSpec::dyadic(1.0, -3, 3, true).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly3_product_evaluates_pointwise(p in poly1(3), q in poly1(3), a in small_rational(), b in small_rational(), pt in point()) {
        let zero = rat(0, 1);
        let pp = compose_affine(&p, &a, &b, &zero);
        let qq = compose_affine(&q, &b, &zero, &a);
        let prod: Poly3 = &pp * &qq;
        prop_assert_eq!(prod.eval(&pt), pp.eval(&pt) * qq.eval(&pt));
        let sum: Poly3 = &pp + &qq;
        prop_assert_eq!(sum.eval(&pt), pp.eval(&pt) + qq.eval(&pt));
    }

    #[test]
    fn composition_is_substitution(p in poly1(5), a in small_rational(), b in small_rational(), g in small_rational(), pt in point()) {
        let composed = compose_affine(&p, &a, &b, &g);
        let arg = &a * &pt[0] + &b * &pt[1] + &g * &pt[2];
        prop_assert_eq!(composed.eval(&pt), p.eval(&arg));
        prop_assert_eq!(compose_affine(&p, &rat(1, 1), &rat(0, 1), &rat(0, 1)).project_x(), p);
    }

    #[test]
    fn rank_plus_nullity(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..6)) {
        let m = RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect());
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), m.cols());
        for v in &null {
            prop_assert!(m.mul_vec(v).iter().all(|e| *e == rat(0, 1)));
        }
    }

    #[test]
    fn residual_symmetries(p in poly1(6), c in coupling(), pt in point()) {
        let [x, y, z] = pt.clone();
        let base = residual_main_exact(&p, c, &pt);
        prop_assert_eq!(&base, &residual_main_exact(&p, c, &[y.clone(), x.clone(), z.clone()]));
        prop_assert_eq!(&base, &residual_main_exact(&p, c, &[x, y, -z]));
    }

    #[test]
    fn residual_is_linear(p in poly1(5), q in poly1(5), s in small_rational(), c in coupling(), pt in point()) {
        let combo = &p + &q.scale(&s);
        let lhs = residual_main_exact(&combo, c, &pt);
        let rhs = residual_main_exact(&p, c, &pt) + &s * residual_main_exact(&q, c, &pt);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn expansion_agrees_with_evaluation(p in poly1(6), c in coupling(), pt in point()) {
        let expanded = symbolic_residual(&p, EquationId::QuadMain(c));
        prop_assert_eq!(expanded.eval(&pt), residual_main_exact(&p, c, &pt));
    }

    #[test]
    fn quadratic_forms_are_biadditive(a in small_rational(), x1 in small_rational(), x2 in small_rational(), y in small_rational()) {
        let q = Poly1::monomial(a.clone(), 2);
        let sum = biadditive_form_exact(&q, &(&x1 + &x2), &y);
        prop_assert_eq!(&sum, &(biadditive_form_exact(&q, &x1, &y) + biadditive_form_exact(&q, &x2, &y)));
        prop_assert_eq!(biadditive_form_exact(&q, &x1, &y), biadditive_form_exact(&q, &y, &x1));
        prop_assert_eq!(biadditive_form_exact(&q, &x1, &x1), q.eval(&x1));
    }

    #[test]
    fn metric_axioms(a in -2.0f64..2.0, b in -2.0f64..2.0, d in -2.0f64..2.0, p in 0.0f64..4.0) {
        let g = move |x: f64| a * x.abs().powf(p);
        let h = move |x: f64| b * x.abs().powf(p) + 0.1 * x;
        let k = move |x: f64| d * x;
        let psi = |x: f64| 1.0 + x.abs();
        let dist = |u: &dyn Fn(f64) -> f64, v: &dyn Fn(f64) -> f64| gen_metric(&u, &v, &psi, &grid());
        prop_assert_eq!(dist(&g, &g), GenMetricValue::Finite(0.0));
        prop_assert_eq!(dist(&g, &h), dist(&h, &g));
        let (gh, hk, gk) = (dist(&g, &h), dist(&h, &k), dist(&g, &k));
        prop_assert!(gk.le_with_slack(gh + hk, 1e-12));
    }

    #[test]
    fn t_contracts_power_perturbations(e1 in 0.0f64..1.0, e2 in 0.0f64..1.0, p in prop_oneof![0.0f64..1.9, 2.1f64..5.0], eps in 0.1f64..3.0) {
        let branch = if p < 2.0 { Branch::Dilate } else { Branch::Contract };
        let l = lipschitz_for_power(p, branch).unwrap();
        let f = FunctionExpr::quad_plus_power(1.0, e1, p).unwrap();
        let g = FunctionExpr::quad_plus_power(1.0, e2, p).unwrap();
        let psi = ControlFunction::power(eps, p).unwrap().psi();
        let v = contraction_check(&f, &g, branch, &psi, l, &grid()).unwrap();
        prop_assert!(v.holds, "{:?}", v);
    }

    #[test]
    fn weight_condition_holds_with_equality(p in prop_oneof![0.0f64..1.9, 2.1f64..6.0], eps in 0.01f64..10.0) {
        let branch = if p < 2.0 { Branch::Dilate } else { Branch::Contract };
        let l = lipschitz_for_power(p, branch).unwrap();
        let psi = ControlFunction::power(eps, p).unwrap().psi();
        prop_assert!(weight_scaling_gap(&psi, branch, l, grid().points()) < 1e-14);
        prop_assert!(bound_formulas_agree(p, branch, l, Coupling::new(2).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn fitted_controls_dominate(eta in 0.001f64..1.0, seed in any::<u64>(), c in coupling()) {
        let grid = GridSpec::dyadic(1.0, -2, 2, true).unwrap();
        let triples = sample_triples(&grid, 0);
        let f = FunctionExpr::quad_plus_noise(1.0, eta, seed).unwrap();
        let delta = empirical_control_fit(&f, c, ControlFamily::Constant, &triples);
        prop_assert!(delta <= eta * (4.0 + 10.0 * c.squared()) * (1.0 + 1e-12));
        let control = ControlFunction::constant(delta).unwrap();
        prop_assert!(check_hypothesis(&f, c, &control, &triples).pass);
    }

    #[test]
    fn noise_stays_inside_the_envelope(eta in 0.001f64..0.5, seed in any::<u64>(), c in coupling()) {
        let f = FunctionExpr::quad_plus_noise(1.0, eta, seed).unwrap();
        let grid = GridSpec::dyadic(1.0, -2, 2, true).unwrap();
        let mut cfg = StabilityConfig::new(c, f, ControlSpec::NoiseCeiling, grid);
        cfg.tol = 1e-12;
        let report = run_experiment(&cfg).unwrap();
        prop_assert_eq!(report.summary.verdict, Verdict::Pass);
        for p in &report.points {
            prop_assert!(p.abs_err <= eta);
            prop_assert!((p.q - p.x * p.x).abs() < 1e-9);
        }
    }
}
