//! q-hypergeometric series, operators and solution bases at 0 and ∞.
//!
//! With `e = 1 + s − r` the series is `Σ_d (a;q)_d / (q, b;q)_d ((−1)^d q^{d(d−1)/2})^e Q^d`
//! and it is annihilated by `Q(−σ)^e ∏(1 − a_i σ) − (1 − σ) ∏(1 − (b_j/q) σ)`.

use num_complex::Complex64;
use qonf_qspecial::{log_theta, QValue};
use qonf_rings::{NilpotentElement, Poly, Scalar, TruncatedQSeries};

use crate::error::{QDiffError, QDiffResult};
use crate::field::Field;
use crate::mat::Mat;
use crate::operator::ScalarQOperator;

#[derive(Clone, Debug, PartialEq)]
pub struct QHypergeometricSpec<S: Scalar> {
    pub a: Vec<S>,
    pub b: Vec<S>,
}

impl<S: Scalar + Field> QHypergeometricSpec<S> {
    /// Zero parameters are allowed for the series; [`qhg_bases`] rejects them.
    pub fn new(a: Vec<S>, b: Vec<S>) -> Self {
        QHypergeometricSpec { a, b }
    }

    /// `1 + s − r`.
    pub fn exponent(&self) -> i64 {
        1 + self.b.len() as i64 - self.a.len() as i64
    }

    /// `f_{d+1}/f_d = (−q^d)^e ∏(1 − a_i q^d) / ((1 − q^{d+1}) ∏(1 − b_j q^d))`.
    pub fn ratio(&self, q: &S, qd: &S) -> QDiffResult<S> {
        let e = self.exponent();
        let one = S::one();
        let mut num = one.clone();
        for a in &self.a {
            num = num.mul_ref(&one.sub_ref(&a.mul_ref(qd)));
        }
        let mut den = one.sub_ref(&qd.mul_ref(q));
        for b in &self.b {
            den = den.mul_ref(&one.sub_ref(&b.mul_ref(qd)));
        }
        let inv = den.try_inv().ok_or_else(|| QDiffError::Pole("lower parameter in q^{-N}".into()))?;
        let m = qd.neg_ref();
        let pw = if e >= 0 {
            m.pow_u(e as usize)
        } else {
            m.try_inv().expect("q nonzero").pow_u((-e) as usize)
        };
        Ok(num.mul_ref(&inv).mul_ref(&pw))
    }

    /// Annihilating operator; requires `r ≤ s + 1`.
    pub fn operator(&self, q: &S) -> QDiffResult<ScalarQOperator<S>> {
        let e = self.exponent();
        if e < 0 {
            return Err(QDiffError::Input("operator form needs r <= s + 1".into()));
        }
        let one_minus = |c: &S| Poly::from_coeffs(vec![S::one(), c.neg_ref()]);
        let mut upper = Poly::monomial(S::from_i64(if e % 2 == 0 { 1 } else { -1 }), e as usize);
        for a in &self.a {
            upper = upper.mul(&one_minus(a));
        }
        let qinv = q.try_inv().ok_or_else(|| QDiffError::Input("q must be nonzero".into()))?;
        let mut lower = one_minus(&S::one());
        for b in &self.b {
            lower = lower.mul(&one_minus(&b.mul_ref(&qinv)));
        }
        let len = upper.coeffs().len().max(lower.coeffs().len());
        let coeffs = (0..len)
            .map(|k| Poly::from_coeffs(vec![lower.coeff(k).neg_ref(), upper.coeff(k)]))
            .collect();
        ScalarQOperator::from_polys(coeffs, q.clone())
    }
}

/// Taylor coefficients of the q-hypergeometric series through `Q^D`.
pub fn qhg_series<S: Scalar + Field>(spec: &QHypergeometricSpec<S>, q: &S, d: usize) -> QDiffResult<TruncatedQSeries<S>> {
    let mut f = vec![S::one()];
    let mut qd = S::one();
    for k in 0..d {
        let r = spec.ratio(q, &qd)?;
        f.push(f[k].mul_ref(&r));
        qd = qd.mul_ref(q);
    }
    Ok(TruncatedQSeries::from_coeffs(0, f.into_iter().map(|c| NilpotentElement::scalar(0, c)).collect())?)
}

/// How a basis element's series argument depends on `Q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Argument {
    /// `κ·Q`.
    Scaled(Complex64),
    /// `κ/Q`.
    Inverted(Complex64),
}

/// `θ_q(−c·Q)/θ_q(−Q) · φ_spec(argument(Q))`.
#[derive(Clone, Debug, PartialEq)]
pub struct QhgSolution {
    pub theta_shift: Complex64,
    pub spec: QHypergeometricSpec<Complex64>,
    pub argument: Argument,
}

/// Maximum number of series terms summed by [`QhgSolution::eval`].
const MAX_TERMS: usize = 20_000;

/// Direct summation of the series at `x`; requires `|x| < 1` when `r = s + 1`.
pub fn qhg_sum(spec: &QHypergeometricSpec<Complex64>, q: &QValue, x: Complex64) -> QDiffResult<Complex64> {
    if spec.exponent() == 0 && x.norm() >= 1.0 {
        return Err(QDiffError::Input(format!("series argument {x} outside the unit disc")));
    }
    let qq = q.q();
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut qd = Complex64::new(1.0, 0.0);
    let mut small = 0;
    for _ in 0..MAX_TERMS {
        term *= spec.ratio(&qq, &qd)? * x;
        sum += term;
        qd *= qq;
        if term.norm() <= 1e-17 * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Ok(sum)
}

impl QhgSolution {
    pub fn eval(&self, q: &QValue, big_q: Complex64) -> QDiffResult<Complex64> {
        let x = match self.argument {
            Argument::Scaled(k) => k * big_q,
            Argument::Inverted(k) => k / big_q,
        };
        let series = qhg_sum(&self.spec, q, x)?;
        let one = Complex64::new(1.0, 0.0);
        if (self.theta_shift - one).norm() == 0.0 {
            return Ok(series);
        }
        let lp = log_theta(q, -self.theta_shift * big_q, 1e-17)? - log_theta(q, -big_q, 1e-17)?;
        Ok(lp.exp() * series)
    }
}

/// Bases of solutions at 0 and at ∞ for `r = s + 1`.
#[derive(Clone, Debug)]
pub struct QhgBases {
    pub at_zero: Vec<QhgSolution>,
    pub at_infinity: Vec<QhgSolution>,
}

fn in_q_lattice(x: Complex64, q: &QValue) -> bool {
    let h = q.log();
    let k = (x.norm().ln() / h.re).round();
    (x - (h * k).exp()).norm() <= 1e-10 * x.norm().max(1e-300)
}

pub fn qhg_bases(spec: &QHypergeometricSpec<Complex64>, q: &QValue) -> QDiffResult<QhgBases> {
    let r = spec.a.len();
    let s = spec.b.len();
    if spec.a.iter().chain(&spec.b).any(|x| x.norm() == 0.0) {
        return Err(QDiffError::Input("basis construction needs nonzero parameters".into()));
    }
    if r != s + 1 {
        return Err(QDiffError::Input(format!("bases need r = s + 1, got r = {r}, s = {s}")));
    }
    let qq = q.q();
    let mut lower = vec![qq];
    lower.extend(spec.b.iter().copied());
    for i in 0..lower.len() {
        for j in 0..i {
            if in_q_lattice(lower[i] / lower[j], q) {
                return Err(QDiffError::Resonance { degree: 0 });
            }
        }
    }
    for i in 0..r {
        for j in 0..i {
            if in_q_lattice(spec.a[i] / spec.a[j], q) {
                return Err(QDiffError::Resonance { degree: 0 });
            }
        }
    }
    let mut at_zero = vec![QhgSolution {
        theta_shift: Complex64::new(1.0, 0.0),
        spec: spec.clone(),
        argument: Argument::Scaled(Complex64::new(1.0, 0.0)),
    }];
    for (j, bj) in spec.b.iter().enumerate() {
        let a = spec.a.iter().map(|ai| qq * ai / bj).collect();
        let mut b = vec![qq * qq / bj];
        b.extend(spec.b.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, bk)| qq * bk / bj));
        at_zero.push(QhgSolution {
            theta_shift: bj / qq,
            spec: QHypergeometricSpec::new(a, b),
            argument: Argument::Scaled(Complex64::new(1.0, 0.0)),
        });
    }
    let kappa = qq * spec.b.iter().product::<Complex64>() / spec.a.iter().product::<Complex64>();
    let mut at_infinity = Vec::with_capacity(r);
    for (i, ai) in spec.a.iter().enumerate() {
        let mut a = vec![*ai];
        a.extend(spec.b.iter().map(|bj| ai * qq / bj));
        let b = spec.a.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, ak)| ai * qq / ak).collect();
        at_infinity.push(QhgSolution {
            theta_shift: *ai,
            spec: QHypergeometricSpec::new(a, b),
            argument: Argument::Inverted(kappa),
        });
    }
    Ok(QhgBases { at_zero, at_infinity })
}

/// Casorati matrix `[y_j(q^k Q)]_{k,j}`.
pub fn casorati_matrix(
    sols: &[QhgSolution],
    q: &QValue,
    big_q: Complex64,
) -> QDiffResult<Mat<Complex64>> {
    let n = sols.len();
    let mut m = Mat::zeros(n, n);
    let mut x = big_q;
    for k in 0..n {
        for (j, y) in sols.iter().enumerate() {
            m[(k, j)] = y.eval(q, x)?;
        }
        x *= q.q();
    }
    Ok(m)
}
