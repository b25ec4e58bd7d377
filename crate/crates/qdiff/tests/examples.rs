use num_complex::Complex64;
use qonf_qdiff::*;
use qonf_qspecial::{log_theta, q_character, q_log, qpoch_infinite, QValue};
use qonf_rings::{qfactorial, rat, BigRational, Poly, RationalFunctionQ as R, Scalar};

type QR = QRational<R>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rq(p: &[R]) -> QR {
    QRational::from_poly(Poly::from_coeffs(p.to_vec()))
}

fn k(v: i64) -> R {
    R::from_integer(v)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

#[test]
fn companion_examples() {
    let trivial = ScalarQOperator::from_polys(vec![Poly::one(), Poly::constant(k(-1))], R::q()).unwrap();
    let a = trivial.companion_system();
    assert_eq!(a.dim(), 1);
    assert_eq!(a.matrix()[(0, 0)], QR::one());

    let p2 = ScalarQOperator::pn(2, R::q());
    let a = p2.companion_system();
    assert_eq!(a.dim(), 3);
    assert_eq!(a.matrix()[(2, 0)], rq(&[k(1), k(-1)]));
    assert_eq!(a.matrix()[(2, 1)], rq(&[k(-3)]));
    assert_eq!(a.matrix()[(2, 2)], rq(&[k(3)]));
    assert_eq!(a.matrix()[(0, 1)], QR::one());
    assert_eq!(a.matrix()[(1, 2)], QR::one());

    let a0 = rq(&[k(2), k(5)]);
    let a1 = rq(&[R::q(), k(0), k(1)]);
    let op = ScalarQOperator::new(vec![a0.clone(), a1.clone(), QR::one()], R::q()).unwrap();
    let m = op.companion_system();
    assert_eq!(m.matrix()[(1, 0)], a0.neg());
    assert_eq!(m.matrix()[(1, 1)], a1.neg());

    assert_eq!(
        ScalarQOperator::new(vec![QR::one(), QR::zero()], R::q()).unwrap_err(),
        QDiffError::DegenerateOperator
    );
}

#[test]
fn regular_singularity_examples() {
    for n in 0..4 {
        assert!(ScalarQOperator::pn(n, R::q()).is_regular_singular_at_0());
    }
    // q^{N+1} W (σ − 1)^{N+1} − σ^{N+1}, N = 1
    let q2 = R::q().pow_u(2);
    let w = |c: R| Poly::from_coeffs(vec![k(0), &q2 * &c]);
    let op = ScalarQOperator::from_polys(
        vec![w(k(1)), w(k(-2)), w(k(1)).add(&Poly::constant(k(-1)))],
        R::q(),
    )
    .unwrap();
    assert!(!op.is_regular_singular_at_0());
    let id = ScalarQOperator::from_polys(vec![Poly::constant(k(-1)), Poly::one()], R::q()).unwrap();
    assert!(id.is_regular_singular_at_0());
}

/// Oracle: `(αQ;q)_∞` coefficients `(−α)^m q^{m(m−1)/2}/(q;q)_m`.
fn qpoch_inf_series(alpha: &R, d: usize) -> Vec<R> {
    (0..=d)
        .map(|m| {
            let sign = if m % 2 == 0 { k(1) } else { k(-1) };
            &(&sign * &(&alpha.pow_u(m) * &R::q().pow_u(m * (m.saturating_sub(1)) / 2))) / &qfactorial(m)
        })
        .collect()
}

fn scalar_series(c: &[R]) -> MatSeries<R> {
    MatSeries::new(c.iter().map(|x| Mat::from_fn(1, 1, |_, _| x.clone())).collect())
}

#[test]
fn gauge_examples() {
    let lambda = R::constant(rat(3, 2));
    let alpha = R::constant(rat(-2, 5));
    let a = rq(&[lambda.clone(), &(-&alpha) * &lambda]);
    let sys = QDifferenceSystem::new(Mat::from_fn(1, 1, |_, _| a.clone()), R::q()).unwrap();
    assert_eq!(sys.gauge_transform(&Mat::identity(1)).unwrap(), sys);
    let cmat = Mat::identity(1).scale(&QR::constant(k(7)));
    assert_eq!(sys.gauge_transform(&cmat).unwrap().matrix()[(0, 0)], a);

    let d = 8;
    let p = scalar_series(&qpoch_inf_series(&alpha, d));
    let t = sys.gauge_transform_series(&p).unwrap();
    assert_eq!(t.coeff(0)[(0, 0)], lambda);
    for m in 1..=d {
        assert!(Scalar::is_zero(&t.coeff(m)[(0, 0)]), "degree {m}");
    }
    // The reciprocal gauge squares the factor instead.
    let t = sys.gauge_transform_series(&p.inverse().unwrap()).unwrap();
    let omaq = Poly::from_coeffs(vec![k(1), -&alpha]);
    let sq = omaq.mul(&omaq).scale(&lambda);
    for m in 0..=d {
        assert_eq!(t.coeff(m)[(0, 0)], sq.coeff(m));
    }

    let mut a2 = Mat::identity(2);
    a2[(0, 1)] = QR::var();
    let sys2 = QDifferenceSystem::new(a2, R::q()).unwrap();
    let mut sing = Mat::identity(2);
    sing[(1, 1)] = QR::zero();
    assert_eq!(sys2.gauge_transform(&sing).unwrap_err(), QDiffError::Singular);

    let mut p2 = Mat::identity(2);
    p2[(1, 0)] = rq(&[k(1), k(1)]);
    let t = sys2.gauge_transform(&p2).unwrap();
    // Direct oracle: σP·A·P⁻¹ with P⁻¹ = [[1,0],[−(1+Q),1]].
    let mut pinv = Mat::identity(2);
    pinv[(1, 0)] = rq(&[k(-1), k(-1)]);
    let sp = p2.map(|x| x.scale_var(&R::q()));
    assert_eq!(t.matrix(), &sp.mul(sys2.matrix()).mul(&pinv));
}

#[test]
fn normalize_examples() {
    let mut a = Mat::identity(2);
    a[(0, 1)] = QR::constant(k(4));
    a[(1, 1)] = QR::constant(k(3));
    let sys = QDifferenceSystem::new(a, R::q()).unwrap();
    let nm = sys.normalize_to_constant(5).unwrap();
    assert_eq!(nm.f, MatSeries::identity(2, 5));

    let lambda = R::constant(rat(3, 2));
    let alpha = R::constant(rat(-2, 5));
    let a = rq(&[lambda.clone(), &(-&alpha) * &lambda]);
    let sys = QDifferenceSystem::new(Mat::from_fn(1, 1, |_, _| a.clone()), R::q()).unwrap();
    let d = 7;
    let nm = sys.normalize_to_constant(d).unwrap();
    let expect = qpoch_inf_series(&alpha, d);
    for m in 0..=d {
        assert_eq!(nm.f.coeff(m)[(0, 0)], expect[m]);
        assert_eq!(nm.gauge.coeff(m)[(0, 0)], &alpha.pow_u(m) / &qfactorial(m));
    }
    let back = sys.gauge_transform_series(&nm.f).unwrap();
    assert_eq!(back.coeff(0), &nm.a0);
    assert!((1..=d).all(|m| back.coeff(m).is_zero()));

    // 2×2, diag(1, μ) + Q·offdiag, rational q.
    let q = rat(1, 3);
    let mu = rat(5, 7);
    let mut a = Mat::zeros(2, 2);
    a[(0, 0)] = QRational::constant(rat(1, 1));
    a[(1, 1)] = QRational::constant(mu.clone());
    a[(0, 1)] = QRational::from_poly(Poly::from_coeffs(vec![rat(0, 1), rat(2, 1)]));
    a[(1, 0)] = QRational::from_poly(Poly::from_coeffs(vec![rat(0, 1), rat(-3, 1)]));
    let sys = QDifferenceSystem::new(a, q.clone()).unwrap();
    let nm = sys.normalize_to_constant(6).unwrap();
    let dg = [rat(1, 1), mu.clone()];
    let a1 = [[rat(0, 1), rat(2, 1)], [rat(-3, 1), rat(0, 1)]];
    for i in 0..2 {
        for j in 0..2 {
            let expect = -a1[i][j].clone() / (&q * &dg[j] - &dg[i]);
            assert_eq!(nm.f.coeff(1)[(i, j)], expect);
        }
    }
    let back = sys.gauge_transform_series(&nm.f).unwrap();
    assert!((1..=6).all(|m| back.coeff(m).is_zero()));

    // Eigenvalue ratio q: resonance at degree 1.
    let mut a = Mat::zeros(2, 2);
    a[(0, 0)] = QR::one();
    a[(1, 1)] = QR::constant(R::q());
    a[(1, 0)] = QR::var();
    let sys = QDifferenceSystem::new(a, R::q()).unwrap();
    assert_eq!(sys.normalize_to_constant(3).unwrap_err(), QDiffError::Resonance { degree: 1 });
}

#[test]
fn frobenius_examples() {
    let q = c(0.45, 0.2);
    let qv = QValue::new(q).unwrap();
    let lambda = c(0.7, -1.3);
    let sys = QDifferenceSystem::constant(&Mat::from_fn(1, 1, |_, _| lambda), q).unwrap();
    let sol = frobenius_solution(&sys, 10).unwrap();
    for z in [c(0.3, 0.1), c(-0.6, 0.5), c(1.7, -0.2)] {
        let v = sol.eval(z).unwrap()[(0, 0)];
        assert!(rel(v, q_character(lambda, &qv, z).unwrap()) < 1e-12);
    }

    let mut a = Mat::identity(2);
    a[(1, 0)] = c(1.0, 0.0);
    let sys = QDifferenceSystem::constant(&a, q).unwrap();
    let sol = frobenius_solution(&sys, 10).unwrap();
    for z in [c(0.3, 0.1), c(-0.6, 0.5)] {
        let x = sol.eval(z).unwrap();
        let l = q_log(&qv, z).unwrap();
        assert!(rel(x[(0, 0)], c(1.0, 0.0)) < 1e-14 && x[(0, 1)].norm() < 1e-14);
        assert!(rel(x[(1, 0)], l) < 1e-12 && rel(x[(1, 1)], c(1.0, 0.0)) < 1e-14);
        // (1, ℓ) is the first column; (0, 1) is q-constant.
        assert!(sol.shift_residual(&sys, z).unwrap() < 1e-12);
    }

    // σf = (1 − Q)f: gauge coefficients 1/(q;q)_d.
    let one_minus_q = QRational::from_poly(Poly::from_coeffs(vec![c(1.0, 0.0), c(-1.0, 0.0)]));
    let sys = QDifferenceSystem::new(Mat::from_fn(1, 1, |_, _| one_minus_q.clone()), q).unwrap();
    let sol = frobenius_solution(&sys, 40).unwrap();
    let mut qfac = c(1.0, 0.0);
    for dd in 0..=40 {
        if dd > 0 {
            qfac *= c(1.0, 0.0) - q.powu(dd as u32);
        }
        let g = sol.gauge.coeff(dd)[(0, 0)];
        assert!(rel(g, qfac.inv()) < 1e-12, "degree {dd}");
    }
    let z = c(0.4, -0.2);
    let oracle = qpoch_infinite(z, &qv, 1e-16).inv();
    assert!(rel(sol.eval(z).unwrap()[(0, 0)], oracle) < 1e-12);
}

#[test]
fn unsupported_jordan() {
    let q = c(0.5, 0.1);
    let mut a = Mat::identity(2).scale(&c(2.0, 0.0));
    a[(0, 1)] = c(1.0, 0.0);
    let sys = QDifferenceSystem::constant(&a, q).unwrap();
    assert!(matches!(frobenius_solution(&sys, 5), Err(QDiffError::UnsupportedJordan(_))));
}

#[test]
fn scalar_series_examples() {
    let d = 8;
    let triv = ScalarQOperator::from_polys(vec![Poly::one(), Poly::constant(k(-1))], R::q()).unwrap();
    let s = triv.solve_scalar_series(d).unwrap();
    assert_eq!(s.get(0, 0), &k(1));
    assert!((1..=d).all(|m| Scalar::is_zero(s.get(m, 0))));
    for n in [0usize, 2] {
        let s = ScalarQOperator::pn(n, R::q()).solve_scalar_series(d).unwrap();
        for m in 0..=d {
            assert_eq!(s.get(m, 0), &qfactorial(m).pow_u(n + 1).inv().unwrap());
        }
    }
}

#[test]
fn log_solution_examples() {
    let d = 6;
    for n in [1usize, 2] {
        let op = ScalarQOperator::pn(n, R::q());
        let sols = op.frobenius_log_solutions(d).unwrap();
        assert_eq!(sols.len(), n + 1);
        let f: Vec<R> = (0..=d).map(|m| qfactorial(m).pow_u(n + 1).inv().unwrap()).collect();
        let mut a = k(0);
        for m in 0..=d {
            if m > 0 {
                // a_d − a_{d−1} = +(N+1)q^d/(1 − q^d) for ℓ_q(qQ) = ℓ_q(Q) + 1.
                let t = &(&k(n as i64 + 1) * &R::q_pow(m)) / &R::one_minus_q_pow(m);
                a = &a + &t;
            }
            assert_eq!(sols[1].get(m, 0, 1), f[m]);
            assert_eq!(sols[1].get(m, 0, 0), &f[m] * &a);
        }
        for (s, sol) in sols.iter().enumerate() {
            assert_eq!(sol.effective_logdegree(), Some(s));
            for m in 0..=d {
                assert_eq!(sol.get(m, 0, s), f[m]);
            }
            assert!(op.apply_to_log_series(sol).unwrap().is_zero_through(d));
        }
    }
    // The opposite sign does not solve the equation.
    let op = ScalarQOperator::pn(2, R::q());
    let mut wrong = op.frobenius_log_solutions(d).unwrap()[1].clone();
    let mut a = k(0);
    for m in 0..=d {
        if m > 0 {
            a = &a + &(&(&k(-3) * &R::q_pow(m)) / &R::one_minus_q_pow(m));
        }
        let f = qfactorial(m).pow_u(3).inv().unwrap();
        wrong.set(m, 0, qonf_rings::NilpotentElement::scalar(0, &f * &a));
    }
    assert!(!op.apply_to_log_series(&wrong).unwrap().is_zero_through(d));

    let triv = ScalarQOperator::from_polys(vec![Poly::one(), Poly::constant(k(-1))], R::q()).unwrap();
    let sols = triv.frobenius_log_solutions(d).unwrap();
    assert_eq!(sols.len(), 1);
    assert_eq!(sols[0].effective_logdegree(), Some(0));

    let mixed = ScalarQOperator::from_polys(vec![Poly::constant(k(2)), Poly::constant(k(-3)), Poly::one()], R::q())
        .unwrap();
    assert!(matches!(mixed.frobenius_log_solutions(3), Err(QDiffError::NotMaximalUnipotent(_))));
}

#[test]
fn qhg_series_examples() {
    let d = 7;
    let empty: QHypergeometricSpec<R> = QHypergeometricSpec::new(vec![], vec![]);
    let s = qhg_series(&empty, &R::q(), d).unwrap();
    for m in 0..=d {
        let sign = if m % 2 == 0 { k(1) } else { k(-1) };
        let expect = &(&sign * &R::q_pow(m * m.saturating_sub(1) / 2)) / &qfactorial(m);
        assert_eq!(s.get(m, 0), &expect);
    }
    let zero_a = QHypergeometricSpec::new(vec![k(0)], vec![]);
    let s = qhg_series(&zero_a, &R::q(), d).unwrap();
    for m in 0..=d {
        assert_eq!(s.get(m, 0), &qfactorial(m).inv().unwrap());
    }
    let spec = QHypergeometricSpec::new(vec![rat(2, 3), rat(-5, 1)], vec![rat(7, 4)]);
    let q = rat(1, 5);
    let s = qhg_series(&spec, &q, d).unwrap();
    assert_eq!(s.get(0, 0), &rat(1, 1));
    // Oracle: (a;q)_d / (q,b;q)_d.
    let poch = |a: &BigRational, m: usize| (0..m).fold(rat(1, 1), |acc, r| acc * (rat(1, 1) - a * q.pow_u(r)));
    for m in 0..=d {
        let expect = poch(&spec.a[0], m) * poch(&spec.a[1], m) / (poch(&q, m) * poch(&spec.b[0], m));
        assert_eq!(s.get(m, 0), &expect);
    }
    let op = spec.operator(&q).unwrap();
    let coeffs: Vec<BigRational> = (0..=d).map(|m| s.get(m, 0).clone()).collect();
    assert!(op.apply_to_series(&coeffs).iter().all(Scalar::is_zero));

    let bad = QHypergeometricSpec::new(vec![rat(1, 2)], vec![rat(25, 1)]);
    assert!(matches!(qhg_series(&bad, &q, 4), Err(QDiffError::Pole(_))));
}

#[test]
fn qhg_basis_examples() {
    let q = QValue::new(c(0.35, 0.15)).unwrap();
    let spec = QHypergeometricSpec::new(vec![c(0.4, 0.3), c(-1.3, 0.2)], vec![c(2.1, -0.7)]);
    let bases = qhg_bases(&spec, &q).unwrap();
    assert_eq!(bases.at_zero.len(), 2);
    assert_eq!(bases.at_infinity.len(), 2);
    let op = spec.operator(&q.q()).unwrap();
    let series = qhg_series(&spec, &q.q(), 60).unwrap();
    let z = c(0.2, 0.1);
    let direct: Complex64 = (0..=60).map(|m| series.get(m, 0) * z.powu(m as u32)).sum();
    assert!(rel(bases.at_zero[0].eval(&q, z).unwrap(), direct) < 1e-12);
    for y in &bases.at_zero {
        for z in [c(0.2, 0.1), c(-0.3, 0.25)] {
            let res = op.apply_numeric(|x| y.eval(&q, x), z).unwrap();
            assert!(res.norm() < 1e-8 * y.eval(&q, z).unwrap().norm(), "{res}");
        }
    }
    for y in &bases.at_infinity {
        for z in [c(9.0, 4.0), c(-7.5, 11.0)] {
            let res = op.apply_numeric(|x| y.eval(&q, x), z).unwrap();
            let scale = y.eval(&q, z).unwrap().norm() * 10.0;
            assert!(res.norm() < 1e-8 * scale, "{res}");
        }
    }
    let w = casorati_matrix(&bases.at_zero, &q, c(0.2, 0.1)).unwrap().det().unwrap();
    assert!(w.norm() > 1e-8);
    let w = casorati_matrix(&bases.at_infinity, &q, c(9.0, 4.0)).unwrap().det().unwrap();
    assert!(w.norm() > 1e-8);
}

/// Durand–Kerner roots of a monic cubic `z³ + c2 z² + c1 z + c0`.
fn cubic_roots(c2: Complex64, c1: Complex64, c0: Complex64) -> [Complex64; 3] {
    let p = |z: Complex64| ((z + c2) * z + c1) * z + c0;
    let mut r = [c(0.4, 0.9), c(0.4, 0.9).powu(2), c(0.4, 0.9).powu(3)];
    for _ in 0..500 {
        for i in 0..3 {
            let mut den = c(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    den *= r[i] - r[j];
                }
            }
            r[i] -= p(r[i]) / den;
        }
    }
    r
}

#[test]
fn rank1_and_birkhoff_examples() {
    let q = QValue::new(c(0.6, 0.25)).unwrap();
    let triv = rank1_product_solution(c(1.0, 0.0), vec![], vec![], q).unwrap();
    assert_eq!(triv.eval(c(0.3, 0.2)).unwrap(), c(1.0, 0.0));
    let f = rank1_product_solution(c(1.0, 0.0), vec![c(1.0, 0.0)], vec![], q).unwrap();
    for z in [c(0.3, 0.2), c(-2.5, 1.0)] {
        assert!(rel(f.eval(z).unwrap(), qpoch_infinite(z, &q, 1e-16).inv()) < 1e-11);
        assert!(f.shift_residual(z).unwrap() < 1e-11);
    }
    assert!(matches!(f.eval(c(1.0, 0.0)), Err(QDiffError::Pole(_))));

    let same = as_matrix(|z| f.eval(z));
    let same_inf = as_matrix(|w: Complex64| f.eval(w.inv()));
    let p = birkhoff_matrix(&same, &same_inf, c(0.3, 0.7)).unwrap();
    assert!(rel(p[(0, 0)], c(1.0, 0.0)) < 1e-14);

    // P(Q) = (q−1)Q + (Q−1)(Q−i)(Q+1) = Q³ − iQ² + (q−2)Q + i.
    let i = c(0.0, 1.0);
    let roots = cubic_roots(-i, q.q() - 2.0, i);
    let alpha: Vec<Complex64> = roots.iter().map(|r| r.inv()).collect();
    let beta = vec![c(1.0, 0.0), -i, c(-1.0, 0.0)];
    let f0 = rank1_product_solution(c(1.0, 0.0), alpha.clone(), beta.clone(), q).unwrap();
    let ginf = rank1_product_solution(
        c(1.0, 0.0),
        beta.iter().map(|b| q.q() / b).collect(),
        alpha.iter().map(|a| q.q() / a).collect(),
        q,
    )
    .unwrap();
    for z in [c(0.7, 0.45), c(-1.6, 0.9), c(0.2, -2.2)] {
        let coeff = c(1.0, 0.0) + (q.q() - 1.0) * z / ((z - 1.0) * (z - i) * (z + 1.0));
        assert!(rel(f0.coefficient(z), coeff) < 1e-12);
        assert!(f0.shift_residual(z).unwrap() < 1e-10);
        let x0 = as_matrix(|x| f0.eval(x));
        let xi = as_matrix(|w| ginf.eval(w));
        assert!(q_constancy_defect(&x0, &xi, q.q(), z).unwrap() < 1e-8);
        let p = birkhoff_matrix(&x0, &xi, z).unwrap()[(0, 0)];
        let lt = |x: Complex64| log_theta(&q, x, 1e-17).unwrap();
        let expect = (lt(-z) + lt(i * z) + lt(z) - alpha.iter().map(|a| lt(-a * z)).sum::<Complex64>()).exp();
        assert!(rel(p, expect) < 1e-9, "{p} vs {expect}");
    }
}

#[test]
fn json_import() {
    let exact = parse_system_json(r#"{"n": 2, "q": "q", "entries": [
            {"i": 0, "j": 0, "num_poly_Q": "1 - Q", "den_poly_Q": "1"},
            {"i": 1, "j": 0, "num_poly_Q": "Q", "den_poly_Q": "1-q"},
            {"i": 1, "j": 1, "num_poly_Q": "q"}]}"#).unwrap();
    let ParsedSystem::Exact(sys) = &exact else { panic!("exact expected") };
    assert_eq!(sys.matrix()[(0, 0)], rq(&[k(1), k(-1)]));
    assert_eq!(sys.matrix()[(1, 1)], QR::constant(R::q()));
    let num = exact.numeric(Some(c(0.5, 0.0))).unwrap();
    assert!(rel(num.eval(c(0.5, 0.0)).unwrap()[(1, 0)], c(1.0, 0.0)) < 1e-15);
    let n2 = parse_system_json(r#"{"n": 1, "q": [0.5, 0.1], "entries": [{"i": 0, "j": 0, "num_poly_Q": "1 - Q", "den_poly_Q": "1"}]}"#).unwrap();
    assert!(matches!(n2, ParsedSystem::Numeric(_)));
    assert!(parse_system_json(r#"{"n": 1, "q": 1.5, "entries": []}"#).is_err());
    assert!(parse_system_json(r#"{"n": 1, "q": "q", "entries": [{"i": 0, "j": 1, "num_poly_Q": "1"}]}"#).is_err());
}
