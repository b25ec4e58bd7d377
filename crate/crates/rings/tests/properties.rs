use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qonf_rings::*;

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn nil(order: usize) -> impl Strategy<Value = NilpotentElement<BigRational>> {
    prop::collection::vec(small_rat(), order + 1).prop_map(move |c| NilpotentElement::new(order, c))
}

fn triple() -> impl Strategy<Value = (NilpotentElement<BigRational>, NilpotentElement<BigRational>, NilpotentElement<BigRational>)> {
    (0usize..=6).prop_flat_map(|n| (nil(n), nil(n), nil(n)))
}

fn unit() -> impl Strategy<Value = NilpotentElement<BigRational>> {
    (0usize..=6).prop_flat_map(nil).prop_filter("unit", |a| !a.coeff(0).numer().eq(&BigInt::from(0)))
}

/// Small integer polynomial in q, as coefficient vector.
fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-5i64..=5, 1..5).prop_map(|c| Poly::from_coeffs(c.into_iter().map(|v| rat(v, 1)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn inverse_round_trip(a in unit()) {
        let inv = nil_inv(&a).unwrap();
        prop_assert_eq!(nil_mul(&a, &inv).unwrap(), NilpotentElement::one(a.order()));
    }

    #[test]
    fn binomial_at_integer_is_repeated_product(order in 0usize..=5, m in 0i64..=7) {
        let bp = nil_binomial_power(order);
        let expect = NilpotentElement::new(order, vec![rat(1, 1), rat(-1, 1)]).pow(m as usize);
        prop_assert_eq!(NilpotentElement::new(order, bp.at_integer(m)), expect);
    }

    #[test]
    fn limit_agrees_with_numeric_evaluation(
        k in 0usize..3,
        num in qpoly(),
        den in qpoly().prop_filter("no pole near 1", |p| {
            let v = rational_to_f64(&p.eval(&rat(1, 1)));
            v.abs() > 0.5
        }),
    ) {
        // Multiply numerator and denominator by (1-q)^k so cancellation is exercised.
        let lin = Poly::from_coeffs(vec![rat(1, 1), rat(-1, 1)]);
        let f = RationalFunctionQ::new(num.mul(&lin.pow(k)), den.mul(&lin.pow(k))).unwrap();
        let exact = rational_to_f64(&f.limit_q_to_1().unwrap());
        let numeric = f.eval_complex(Complex64::new(1.0 - 1e-6, 0.0)).re;
        let scale = exact.abs().max(1.0);
        prop_assert!((exact - numeric).abs() <= 1e-4 * scale, "exact {} numeric {}", exact, numeric);
    }

    #[test]
    fn ratfunc_field_axioms(a in qpoly(), b in qpoly().prop_filter("nonzero", |p| !p.is_zero())) {
        let x = RationalFunctionQ::from_poly(a);
        let y = RationalFunctionQ::new(Poly::one(), b).unwrap();
        let s = &(&x + &y) - &y;
        prop_assert_eq!(&s, &x);
        let p = &(&x * &y) / &y;
        prop_assert_eq!(&p, &x);
        prop_assert!(y.denom().lead().map(|l| *l == rat(1, 1)).unwrap_or(false));
    }
}
