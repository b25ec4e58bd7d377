//! Finite and infinite q-Pochhammer symbols.

use num_complex::Complex64;

use crate::qvalue::{expm1, QValue};

/// Factor count above which [`qpoch_infinite`] switches to the logarithmic series.
const DIRECT_FACTOR_LIMIT: f64 = 10_000.0;

/// `(a; q)_d = ∏_{r<d} (1 − q^r a)`.
pub fn qpoch_finite(a: Complex64, q: &QValue, d: usize) -> Complex64 {
    (0..d).fold(Complex64::new(1.0, 0.0), |acc, r| acc * (1.0 - a * q.pow(r as f64)))
}

/// `log (a; q)_d`, summing factor logarithms (branch: sum of principal logs).
pub fn log_qpoch_finite(a: Complex64, q: &QValue, d: usize) -> Complex64 {
    (0..d).map(|r| (1.0 - a * q.pow(r as f64)).ln()).sum()
}

/// A logarithm of `(a; q)_∞`.
///
/// Factors with `|q^r a| ≥ 1/2` are taken one by one; the rest use
/// `log (x; q)_∞ = −Σ_k x^k / (k (1 − q^k))`, which converges geometrically.
pub fn log_qpoch_infinite(a: Complex64, q: &QValue) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    if a.norm() == 0.0 {
        return acc;
    }
    let h = q.log();
    let mut r = 0.0;
    let mut x = a;
    while x.norm() >= 0.5 {
        acc += (1.0 - x).ln();
        r += 1.0;
        x = a * (h * r).exp();
    }
    let mut xk = Complex64::new(1.0, 0.0);
    for k in 1..400 {
        xk *= x;
        let term = xk / (-expm1(h * k as f64) * k as f64);
        acc -= term;
        if term.norm() < 1e-18 * acc.norm().max(1.0) {
            break;
        }
    }
    acc
}

/// `(a; q)_∞` truncated where the geometric tail drops below `tol·(1 − |q|)`.
///
/// When that needs more than 10⁴ factors the value is taken from
/// [`log_qpoch_infinite`] instead, which has the same error bound.
pub fn qpoch_infinite(a: Complex64, q: &QValue, tol: f64) -> Complex64 {
    let an = a.norm();
    if an == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let qn = q.q().norm();
    let bound = tol * (1.0 - qn);
    let needed = ((bound / an).ln() / qn.ln()).max(0.0);
    if needed > DIRECT_FACTOR_LIMIT {
        return log_qpoch_infinite(a, q).exp();
    }
    let mut acc = Complex64::new(1.0, 0.0);
    let mut r = 0.0;
    loop {
        let x = a * q.pow(r);
        if x.norm() < bound {
            break;
        }
        acc *= 1.0 - x;
        r += 1.0;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_series_matches_product() {
        for &(q, a) in &[(0.3, 0.9), (0.7, -2.5), (0.95, 3.0)] {
            let qv = QValue::real(q).unwrap();
            let a = Complex64::new(a, 0.2);
            let direct: Complex64 = (0..20_000).fold(Complex64::new(1.0, 0.0), |acc, r| acc * (1.0 - a * qv.pow(r as f64)));
            let via_log = log_qpoch_infinite(a, &qv).exp();
            assert!((direct - via_log).norm() < 1e-11 * direct.norm().max(1.0), "{direct} vs {via_log}");
        }
    }
}
