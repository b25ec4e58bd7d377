use num_complex::Complex64;
use proptest::prelude::*;
use qonf_qdiff::*;
use qonf_qspecial::QValue;
use qonf_rings::{rat, BigRational, Poly};

fn q_strategy() -> impl Strategy<Value = Complex64> {
    (0.2f64..0.7, -1.0f64..1.0).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn z_strategy() -> impl Strategy<Value = Complex64> {
    (0.05f64..0.35, -3.0f64..3.0).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn param() -> impl Strategy<Value = Complex64> {
    (0.3f64..2.5, -3.1f64..3.1).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn far_from_lattice(x: Complex64, q: &QValue) -> bool {
    let h = q.log();
    let k = (x.norm().ln() / h.re).round();
    let lo = k as i64 - 2;
    (lo..=lo + 4).all(|j| (x - (h * j as f64).exp()).norm() > 1e-2 * x.norm())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pn_companion_frobenius(n in 0usize..4, q in q_strategy(), z in z_strategy()) {
        let sys = ScalarQOperator::pn(n, q).companion_system();
        let sol = frobenius_solution(&sys, 40).unwrap();
        let unipotent = matches!(sol.exponents, Exponents::Unipotent { .. });
        prop_assert!(unipotent);
        prop_assert!(sol.shift_residual(&sys, z).unwrap() < 1e-8);
        prop_assert!(sol.casoratian(z).unwrap().norm() > 1e-12);
    }

    #[test]
    fn qhg_family_bases(
        r in 1usize..4,
        q in q_strategy(),
        params in proptest::collection::vec(param(), 6),
        z in z_strategy(),
    ) {
        let qv = QValue::new(q).unwrap();
        let spec = QHypergeometricSpec::new(params[..r].to_vec(), params[3..3 + r - 1].to_vec());
        let mut ratios = Vec::new();
        for i in 0..r { for j in 0..i { ratios.push(spec.a[i] / spec.a[j]); } }
        let mut lower = vec![q];
        lower.extend(spec.b.iter().copied());
        for i in 0..lower.len() { for j in 0..i { ratios.push(lower[i] / lower[j]); } }
        prop_assume!(ratios.iter().all(|x| far_from_lattice(*x, &qv)));
        let bases = qhg_bases(&spec, &qv).unwrap();
        let op = spec.operator(&q).unwrap();
        for y in &bases.at_zero {
            let v = y.eval(&qv, z).unwrap();
            let res = op.apply_numeric(|x| y.eval(&qv, x), z).unwrap();
            let scale = (0..=op.order()).map(|k| y.eval(&qv, z * q.powu(k as u32)).unwrap().norm()).fold(v.norm(), f64::max);
            prop_assert!(res.norm() < 1e-8 * scale, "residual {} scale {}", res.norm(), scale);
        }
        let det = casorati_matrix(&bases.at_zero, &qv, z).unwrap().det().unwrap();
        prop_assert!(det.norm() > 0.0 && det.is_finite());

        // The companion system is semisimple at 0 with exponents 1 and q/b_j.
        let sys = op.companion_system();
        let sol = frobenius_solution(&sys, 40).unwrap();
        let semisimple = matches!(sol.exponents, Exponents::Semisimple { .. });
        prop_assert_eq!(semisimple, r > 1);
        prop_assert!(sol.shift_residual(&sys, z).unwrap() < 1e-8);
        prop_assert!(sol.casoratian(z).unwrap().norm() > 0.0);
    }

    #[test]
    fn normalize_round_trip_exact(
        mu in (1i64..9, 2i64..11),
        entries in proptest::collection::vec(-5i64..6, 8),
    ) {
        let q = rat(2, 7);
        let mu = rat(mu.0, mu.1);
        prop_assume!(mu != rat(1, 1));
        let p = |c0: BigRational, c1: i64, c2: i64| QRational::from_poly(Poly::from_coeffs(vec![c0, rat(c1, 1), rat(c2, 1)]));
        let mut a = Mat::zeros(2, 2);
        a[(0, 0)] = p(rat(1, 1), entries[0], entries[1]);
        a[(0, 1)] = p(rat(0, 1), entries[2], entries[3]);
        a[(1, 0)] = p(rat(0, 1), entries[4], entries[5]);
        a[(1, 1)] = p(mu.clone(), entries[6], entries[7]);
        let sys = QDifferenceSystem::new(a, q.clone()).unwrap();
        match sys.normalize_to_constant(5) {
            Ok(nm) => {
                let back = sys.gauge_transform_series(&nm.f).unwrap();
                prop_assert_eq!(back.coeff(0), &nm.a0);
                prop_assert!((1..=5).all(|m| back.coeff(m).is_zero()));
                let x = nm.gauge.clone();
                // σ(F⁻¹)·A0 = A·F⁻¹ to order 5.
                let lhs = x.scale_var(&q).mul(&MatSeries::new(
                    std::iter::once(nm.a0.clone()).chain((1..=5).map(|_| Mat::zeros(2, 2))).collect(),
                ));
                let rhs = sys.taylor(5).unwrap().mul(&x);
                prop_assert_eq!(lhs, rhs);
            }
            Err(QDiffError::Resonance { degree }) => {
                // Only when μ or 1/μ is a power of q.
                let qd = (0..degree).fold(rat(1, 1), |acc, _| acc * &q);
                prop_assert!(mu == qd || mu.recip() == qd);
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn gauge_transform_inverts(e in proptest::collection::vec(-4i64..5, 3)) {
        let q = rat(1, 3);
        let mut a = Mat::identity(2);
        a[(0, 1)] = QRational::from_poly(Poly::from_coeffs(vec![rat(e[0], 1), rat(1, 1)]));
        a[(1, 1)] = QRational::constant(rat(5, 2));
        let sys = QDifferenceSystem::new(a, q).unwrap();
        let mut p = Mat::identity(2);
        p[(1, 0)] = QRational::from_poly(Poly::from_coeffs(vec![rat(e[1], 1), rat(e[2], 1)]));
        p[(0, 0)] = QRational::new(Poly::constant(rat(1, 1)), Poly::from_coeffs(vec![rat(1, 1), rat(1, 1)])).unwrap();
        let t = sys.gauge_transform(&p).unwrap();
        let back = t.gauge_transform(&p.inverse().unwrap()).unwrap();
        prop_assert_eq!(back.matrix(), sys.matrix());
    }

    #[test]
    fn rank1_shift(lambda in param(), al in proptest::collection::vec(param(), 0..3), be in proptest::collection::vec(param(), 0..3), q in q_strategy(), z in (0.2f64..3.0, -3.0f64..3.0)) {
        let qv = QValue::new(q).unwrap();
        let z = Complex64::from_polar(z.0, z.1);
        let f = rank1_product_solution(lambda, al.clone(), be.clone(), qv).unwrap();
        let poles = al.iter().chain(&be).map(|a| a * z).chain([z, lambda * z]);
        prop_assume!(poles.into_iter().all(|x| far_from_lattice(-x, &qv)));
        prop_assert!(f.shift_residual(z).unwrap() < 1e-9);
    }
}
