use num_rational::BigRational;
use qonf_rings::json::{log_series_from_json, log_series_to_json};
use qonf_rings::*;

fn el(order: usize, c: &[i64]) -> NilpotentElement<BigRational> {
    NilpotentElement::new(order, c.iter().map(|&v| rat(v, 1)).collect())
}

fn rf(s: &str) -> RationalFunctionQ {
    qonf_rings::json::parse_ratfunc_q(s).unwrap()
}

#[test]
fn nil_mul_examples() {
    assert_eq!(nil_mul(&el(1, &[1, 1]), &el(1, &[1, -1])).unwrap(), el(1, &[1]));
    assert_eq!(nil_mul(&el(2, &[1, 1]), &el(2, &[1, 1])).unwrap(), el(2, &[1, 2, 1]));
    assert!(matches!(nil_mul(&el(1, &[1]), &el(3, &[1])), Err(RingError::OrderMismatch { .. })));
}

#[test]
fn nil_inv_examples() {
    assert_eq!(nil_inv(&el(3, &[1])).unwrap(), el(3, &[1]));
    assert_eq!(nil_inv(&el(2, &[1, 1])).unwrap(), el(2, &[1, -1, 1]));
    let a = NilpotentElement::new(1, vec![rf("1 - q"), rf("q")]);
    let inv = nil_inv(&a).unwrap();
    assert_eq!(inv.coeff(0), &rf("1/(1 - q)"));
    assert_eq!(inv.coeff(1), &rf("-q/(1 - q)^2"));
    assert_eq!(nil_inv(&el(1, &[0, 1])), Err(RingError::NonUnit));
}

#[test]
fn binomial_power_examples() {
    let b0 = nil_binomial_power(0);
    assert_eq!(b0.coeffs, vec![LPoly::one()]);
    let b1 = nil_binomial_power(1);
    assert_eq!(b1.coeff(1, 1), rat(-1, 1));
    assert_eq!(b1.coeff(1, 0), rat(0, 1));
    let b2 = nil_binomial_power(2);
    // L(L-1)/2 = L^2/2 - L/2
    assert_eq!(b2.coeff(2, 2), rat(1, 2));
    assert_eq!(b2.coeff(2, 1), rat(-1, 2));
    assert_eq!(b2.coeff(2, 0), rat(0, 1));
}

#[test]
fn pullback_examples() {
    let d = 5;
    let s = TruncatedQSeries::from_scalars((0..=d).map(|k| qfactorial(k).inv().unwrap()).collect());
    assert_eq!(s.scale_pullback(&RationalFunctionQ::one()), s);
    let c = rf("1 - q");
    let pulled = s.scale_pullback(&c);
    for k in 0..=d {
        let expect = &c.pow(k) * &qfactorial(k).inv().unwrap();
        assert_eq!(pulled.get(k, 0), &expect);
    }
    let one_plus_q = TruncatedQSeries::from_scalars(vec![rat(1, 1), rat(1, 1)]);
    let sq = one_plus_q.mul(&one_plus_q).unwrap();
    assert_eq!(sq, TruncatedQSeries::from_scalars(vec![rat(1, 1), rat(2, 1)]));
}

#[test]
fn chern_examples() {
    let x = KClass(el(2, &[0, 3, 1]));
    assert_eq!(chern_iso(&x).0, el(2, &[0, 3, 1]));
    assert_eq!(chern_iso(&KClass(el(2, &[1]))).0, el(2, &[1]));
    assert_eq!(chern_iso_inv(&chern_iso(&x)), x);
}

#[test]
fn limit_examples() {
    assert_eq!(rf("(1 - q)/(1 - q^2)").limit_q_to_1().unwrap(), rat(1, 2));
    let f = &rf("1 - q").pow(3) * &qfactorial(3).inv().unwrap();
    assert_eq!(f.limit_q_to_1().unwrap(), rat(1, 6));
    assert_eq!(rf("(1 - q)*q^4/(1 - q^4)").limit_q_to_1().unwrap(), rat(1, 4));
    assert_eq!(rf("1/(1 - q)").limit_q_to_1(), Err(RingError::LimitUndefined));
}

#[test]
fn log_series_shift_matches_integer_substitution() {
    // σ then L := m equals L := m+1 then Q^d ↦ q^d Q^d.
    let bp = nil_binomial_power(3);
    let s: LogSeries<RationalFunctionQ> = LogSeries::from_binomial(&bp, 2);
    let shifted = s.shift_q(RationalFunctionQ::q_pow).unwrap();
    for m in 0..4 {
        assert_eq!(shifted.at_integer(m), s.at_integer(m + 1));
    }
}

#[test]
fn json_round_trip() {
    let bp = nil_binomial_power(2);
    let base: LogSeries<RationalFunctionQ> = LogSeries::from_binomial(&bp, 3);
    let j = TruncatedQSeries::from_coeffs(
        2,
        (0..=3)
            .map(|d| NilpotentElement::new(2, vec![qfactorial(d).inv().unwrap(), rf("q"), rf("1/(1+q)")]))
            .collect(),
    )
    .unwrap();
    let s = base.mul(&LogSeries::from_series(&j)).unwrap();
    let text = serde_json::to_string(&log_series_to_json(&s)).unwrap();
    let back: LogSeries<RationalFunctionQ> = log_series_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, s);
    assert!(text.contains("\"N\":2"));
}
