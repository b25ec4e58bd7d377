use qonf_qspecial::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Independent oracle: plain symmetric sum of the defining series.
fn theta_naive(q: Complex64, big_q: Complex64, n: i64) -> (Complex64, Complex64, f64) {
    let mut s = c(0.0, 0.0);
    let mut ds = c(0.0, 0.0);
    let mut top: f64 = 0.0;
    for d in -n..=n {
        let e = q.ln() * ((d * (d - 1)) as f64 / 2.0) + big_q.ln() * d as f64;
        let t = e.exp();
        top = top.max(t.norm());
        s += t;
        ds += t * d as f64;
    }
    (s, ds, top)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

#[test]
fn pochhammer_examples() {
    let half = QValue::real(0.5).unwrap();
    assert_eq!(qpoch_finite(c(0.7, 0.1), &half, 0), c(1.0, 0.0));
    assert!(rel(qpoch_finite(c(0.5, 0.0), &half, 2), c(3.0 / 8.0, 0.0)) < 1e-15);
    let q3 = QValue::real(0.3).unwrap();
    let expect = (1.0 - 0.3) * (1.0 - 0.09) * (1.0 - 0.027);
    assert!(rel(qpoch_finite(c(0.3, 0.0), &q3, 3), c(expect, 0.0)) < 1e-14);
    assert_eq!(qpoch_infinite(c(0.0, 0.0), &half, 1e-12), c(1.0, 0.0));
    let oracle: f64 = (0..200).map(|r| 1.0 - 0.5 * 0.5f64.powi(r)).product();
    let v = qpoch_infinite(c(0.5, 0.0), &half, 1e-12);
    assert!((v.re - oracle).abs() < 1e-12 && v.im == 0.0);
    assert!((v.re - 0.288_788_095_086_6).abs() < 1e-12);
}

#[test]
fn pochhammer_recursion() {
    for &(qr, qi, ar, ai) in &[(0.5, 0.0, 0.3, 0.2), (0.4, 0.5, -1.2, 0.7), (0.97, 0.01, 2.0, -1.0)] {
        let q = QValue::new(c(qr, qi)).unwrap();
        let a = c(ar, ai);
        let lhs = (1.0 - a) * qpoch_infinite(q.q() * a, &q, 1e-14);
        let rhs = qpoch_infinite(a, &q, 1e-14);
        assert!(rel(lhs, rhs) < 1e-10, "{lhs} vs {rhs}");
    }
}

#[test]
fn theta_examples() {
    let q = QValue::real(0.1).unwrap();
    let v = theta(&q, c(1.0, 0.0), 1e-16).unwrap();
    // 2(1 + 0.1 + 0.001 + 1e-6 + ...) = 2.202002002...
    assert!((v.re - 2.202_002_000_2).abs() < 1e-9, "{v}");
    assert!(theta(&q, c(0.0, 0.0), 1e-12).is_err());
    for &(qq, big_q) in &[(c(0.3, 0.2), c(1.3, -0.4)), (c(-0.6, 0.1), c(-0.2, 2.0)), (c(0.85, 0.0), c(0.5, 0.5))] {
        let q = QValue::new(qq).unwrap();
        let (naive, _, _) = theta_naive(qq, big_q, 120);
        assert!(rel(theta(&q, big_q, 1e-16).unwrap(), naive) < 1e-11);
        let sym = big_q * theta(&q, 1.0 / big_q, 1e-16).unwrap();
        assert!(rel(sym, naive) < 1e-11);
    }
}

#[test]
fn theta_zeros() {
    for &qq in &[c(0.3, 0.0), c(0.5, 0.4), c(-0.7, 0.2)] {
        let q = QValue::new(qq).unwrap();
        for k in -2..=2 {
            let ev = theta_eval(&q, -q.pow(k as f64), 1e-16).unwrap();
            assert!(ev.relative_magnitude() < 1e-8, "k={k}: {}", ev.relative_magnitude());
        }
    }
}

#[test]
fn q_log_examples() {
    let q = QValue::real(0.2).unwrap();
    let (s, ds, _) = theta_naive(q.q(), c(1.0, 0.0), 80);
    let oracle = -ds / s;
    assert!(rel(q_log(&q, c(1.0, 0.0)).unwrap(), oracle) < 1e-13);
    assert!(matches!(q_log(&q, -q.pow(3.0)), Err(SpecialError::Pole { k: 3, .. })));
}

#[test]
fn character_examples() {
    let q = QValue::new(c(0.4, 0.3)).unwrap();
    let big_q = c(0.7, 1.1);
    assert!(rel(q_character(c(1.0, 0.0), &q, big_q).unwrap(), c(1.0, 0.0)) < 1e-15);
    let lam = c(0.3, -2.0);
    let mu = c(-1.1, 0.5);
    let ratio = q_character(lam, &q, q.q() * big_q).unwrap() / q_character(lam, &q, big_q).unwrap();
    assert!(rel(ratio, lam) < 1e-12);
    let g = |x: Complex64| {
        q_character(lam, &q, x).unwrap() * q_character(mu, &q, x).unwrap() / q_character(lam * mu, &q, x).unwrap()
    };
    assert!(rel(g(q.q() * big_q), g(big_q)) < 1e-10);
    assert!(matches!(q_character(lam, &q, -q.q() / lam), Err(SpecialError::Pole { .. })));
}

#[test]
fn spiral_examples() {
    let q0 = c(0.5, 0.3);
    assert!(spiral_contains(c(1.0, 0.0), q0, q0 * q0 * q0, 1e-8));
    assert!(!spiral_contains(c(1.0, 0.0), c(0.5, 0.0), c(0.0, 1.0), 1e-8));
    let q0 = Complex64::from_polar(0.5, 0.1);
    let nu = c(0.0, 1.0);
    let on = nu * (q0.ln() * 2.5).exp();
    assert!(spiral_contains(nu, q0, on, 1e-8));
    assert!(!spiral_contains(nu, q0, on * Complex64::from_polar(1.0, 0.01), 1e-8));
}

#[test]
fn spiral_logarithm() {
    // Real q0: principal branch.
    let z = c(-2.0, 0.5);
    assert!(rel(log_off_spiral(z, c(0.5, 0.0)), z.ln()) < 1e-15);
    // Complex q0: continuous along a circle that avoids -q0^R.
    let q0 = c(0.5, -0.5);
    let l = log_off_spiral(c(1.0, 0.0), q0);
    assert!(l.norm() < 1e-15);
    let z = c(0.3, 1.7);
    assert!(rel(log_off_spiral(z, q0).exp(), z) < 1e-14);
}

#[test]
fn triple_product_examples() {
    let q = QValue::real(0.3).unwrap();
    assert!(jacobi_triple_product_check(&q, c(1.0, 0.0), 1e-16).unwrap() < 1e-10);
    let q = QValue::real(0.5).unwrap();
    assert!(jacobi_triple_product_check(&q, c(-2.0, 1.0), 1e-16).unwrap() < 1e-10);
    assert_eq!(jacobi_triple_product_check(&q, c(-1.0, 0.0), 1e-16).unwrap(), 0.0);
}

#[test]
fn limits_along_paths() {
    // (q - 1) ℓ_q(Q) → log Q and e_{q, q^μ}(Q) → Q^μ on ℂ ∖ (−q0^ℝ).
    let q0 = c(0.5, -0.5);
    for big_q in [c(2.0, 0.0), c(0.3, 0.0), c(-1.5, 0.7)] {
        let q = QPath::new(q0, 2f64.powi(-16)).unwrap().q();
        let l = (q.q() - 1.0) * q_log(&q, big_q).unwrap();
        assert!((l - log_off_spiral(big_q, q0)).norm() < 1e-3);
        let mu = c(0.5, 0.0);
        let e = q_character(q.powc(mu), &q, big_q).unwrap();
        assert!((e - pow_off_spiral(big_q, mu, q0)).norm() < 1e-3);
    }
}
