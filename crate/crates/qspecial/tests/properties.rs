use proptest::prelude::*;
use qonf_qspecial::*;

fn qvalue(max_abs: f64) -> impl Strategy<Value = QValue> {
    (0.05..max_abs, -3.1f64..3.1).prop_map(|(r, a)| QValue::new(Complex64::from_polar(r, a)).unwrap())
}

fn point() -> impl Strategy<Value = Complex64> {
    (0.2f64..3.0, -3.1f64..3.1).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn theta_shift_law(q in qvalue(0.9), x in point()) {
        prop_assume!(pole_proximity(&q, x).1 > 1e-2);
        let a = theta(&q, q.q() * x, 1e-16).unwrap() * x;
        let b = theta(&q, x, 1e-16).unwrap();
        prop_assert!(rel(a, b) < 1e-10);
    }

    #[test]
    fn q_log_increment(q in qvalue(0.9), x in point()) {
        prop_assume!(pole_proximity(&q, x).1 > 1e-2 && pole_proximity(&q, q.q() * x).1 > 1e-2);
        let a = q_log(&q, q.q() * x).unwrap();
        let b = q_log(&q, x).unwrap() + 1.0;
        prop_assert!((a - b).norm() < 1e-10 * b.norm().max(1.0));
    }

    #[test]
    fn direct_and_modular_agree(r in 0.5f64..0.95, arg in -2.0f64..2.0, x in point()) {
        let q = QValue::new(Complex64::from_polar(r, arg)).unwrap();
        prop_assume!(pole_proximity(&q, x).1 > 1e-2);
        let a = theta_eval_direct(&q, x, 1e-16).unwrap();
        let b = theta_eval_modular(&q, x, 1e-16).unwrap();
        // Absolute agreement on the scale of the largest direct term.
        prop_assert!((a.value() - b.value()).norm() < 1e-12 * a.log_scale.exp());
        prop_assume!(a.relative_magnitude() > 1e-3);
        prop_assert!(rel(a.value(), b.value()) < 1e-9);
        prop_assert!((a.q_log - b.q_log).norm() < 1e-9 * a.q_log.norm().max(1.0));
    }

    #[test]
    fn pochhammer_recursion(q in qvalue(0.95), a in point()) {
        let lhs = (1.0 - a) * qpoch_infinite(q.q() * a, &q, 1e-15);
        let rhs = qpoch_infinite(a, &q, 1e-15);
        prop_assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1e-3));
    }

    #[test]
    fn q_log_converges_linearly(x in point(), k in 8i32..12) {
        let q0 = Complex64::new(0.5, -0.5);
        prop_assume!(spiral_residual(Complex64::new(-1.0, 0.0), q0, x) > 0.1);
        let err = |t: f64| {
            let q = QPath::new(q0, t).unwrap().q();
            ((q.q() - 1.0) * q_log(&q, x).unwrap() - log_off_spiral(x, q0)).norm()
        };
        let t = 2f64.powi(-k);
        let ratio = err(t / 2.0) / err(t);
        prop_assert!((0.35..=0.65).contains(&ratio), "ratio {}", ratio);
    }
}
