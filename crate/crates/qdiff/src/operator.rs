//! Scalar q-difference operators `Σ_k a_k(Q) σ^k`.

use qonf_rings::{LogSeries, NilpotentElement, Poly, Scalar, TruncatedQSeries};

use crate::error::{QDiffError, QDiffResult};
use crate::field::Field;
use crate::mat::Mat;
use crate::qrational::QRational;
use crate::system::QDifferenceSystem;

/// `Σ_{k≤n} a_k(Q) σ_q^k` with `a_n ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarQOperator<S: Scalar> {
    coeffs: Vec<QRational<S>>,
    q: S,
}

impl<S: Scalar + Field> ScalarQOperator<S> {
    pub fn new(coeffs: Vec<QRational<S>>, q: S) -> QDiffResult<Self> {
        match coeffs.last() {
            Some(a) if !a.is_zero() => Ok(ScalarQOperator { coeffs, q }),
            _ => Err(QDiffError::DegenerateOperator),
        }
    }

    /// Operator whose σ-coefficients are polynomials in `Q`.
    pub fn from_polys(coeffs: Vec<Poly<S>>, q: S) -> QDiffResult<Self> {
        Self::new(coeffs.into_iter().map(QRational::from_poly).collect(), q)
    }

    /// `(1 − σ)^{N+1} − Q`.
    pub fn pn(n: usize, q: S) -> Self {
        let mut coeffs = Vec::with_capacity(n + 2);
        let mut binom = 1i64;
        for k in 0..=n + 1 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            coeffs.push(Poly::constant(S::from_i64(sign * binom)));
            binom = binom * (n as i64 + 1 - k as i64) / (k as i64 + 1);
        }
        coeffs[0] = Poly::from_coeffs(vec![S::one(), S::from_i64(-1)]);
        Self::from_polys(coeffs, q).expect("leading coefficient ±1")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[QRational<S>] {
        &self.coeffs
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    /// Companion system for `Y = (f, σf, …, σ^{n−1}f)`; last row `−a_k/a_n`.
    pub fn companion_system(&self) -> QDifferenceSystem<S> {
        let n = self.order();
        let an = &self.coeffs[n];
        let mut a = Mat::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            a[(i, i + 1)] = QRational::one();
        }
        for k in 0..n {
            a[(n - 1, k)] = self.coeffs[k].div(an).expect("a_n nonzero").neg();
        }
        QDifferenceSystem::new(a, self.q.clone()).expect("square")
    }

    /// Valuation test at `Q = 0`.
    pub fn is_regular_singular_at_0(&self) -> bool {
        let n = self.order();
        let vn = self.coeffs[n].valuation().expect("a_n nonzero");
        match self.coeffs[0].valuation() {
            Some(v0) if v0 == vn => {}
            _ => return false,
        }
        self.coeffs.iter().all(|a| a.valuation().map_or(true, |v| v >= vn))
    }

    /// Coefficients cleared to polynomials with the common `Q`-power removed.
    pub fn polynomial_coeffs(&self) -> Vec<Poly<S>> {
        let mut den = Poly::one();
        for a in &self.coeffs {
            den = den.mul(a.denom());
        }
        let polys: Vec<Poly<S>> = self
            .coeffs
            .iter()
            .map(|a| {
                let cleared = a.numer().mul(&den);
                cleared.div_exact(a.denom()).expect("denominator divides the product")
            })
            .collect();
        let v = polys.iter().filter_map(|p| p.valuation()).min().unwrap_or(0);
        polys.into_iter().map(|p| Poly::from_coeffs(p.coeffs().get(v..).unwrap_or(&[]).to_vec())).collect()
    }

    /// `χ_j(x) = Σ_k a_{k,j} x^k` for the cleared coefficients `a_k = Σ_j a_{k,j} Q^j`.
    fn chi(&self) -> Vec<Poly<S>> {
        let polys = self.polynomial_coeffs();
        let jmax = polys.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        (0..jmax).map(|j| Poly::from_coeffs(polys.iter().map(|p| p.coeff(j)).collect())).collect()
    }

    /// Power-series solution with `f_0 = 1`.
    pub fn solve_scalar_series(&self, d: usize) -> QDiffResult<TruncatedQSeries<S>> {
        let chi = self.chi();
        if !chi[0].eval(&S::one()).is_zero() {
            return Err(QDiffError::Input("1 is not a root of the indicial polynomial".into()));
        }
        let qpow: Vec<S> = (0..=d).map(|m| self.q.pow_u(m)).collect();
        let mut f: Vec<S> = vec![S::one()];
        for m in 1..=d {
            let mut rhs = S::zero();
            for (j, c) in chi.iter().enumerate().skip(1).take(m) {
                rhs = rhs.sub_ref(&c.eval(&qpow[m - j]).mul_ref(&f[m - j]));
            }
            let lead = chi[0].eval(&qpow[m]);
            let inv = lead.try_inv().ok_or(QDiffError::Resonance { degree: m })?;
            f.push(rhs.mul_ref(&inv));
        }
        Ok(TruncatedQSeries::from_coeffs(0, f.into_iter().map(|c| NilpotentElement::scalar(0, c)).collect())?)
    }

    /// The `n` log solutions at 0 for a maximally unipotent operator; solution `s`
    /// starts with `L^s` and has `L`-degree exactly `s`.
    pub fn frobenius_log_solutions(&self, d: usize) -> QDiffResult<Vec<LogSeries<S>>> {
        let n = self.order();
        let chi = self.chi();
        let mut rest = chi[0].clone();
        let lin = Poly::from_coeffs(vec![S::from_i64(-1), S::one()]);
        for _ in 0..n {
            rest = rest
                .div_exact(&lin)
                .map_err(|_| QDiffError::NotMaximalUnipotent("indicial polynomial is not c·(x−1)^n".into()))?;
        }
        let qpow: Vec<S> = (0..=d).map(|m| self.q.pow_u(m)).collect();
        let mut out = Vec::with_capacity(n);
        for s in 0..n {
            let mut p: Vec<Vec<S>> = Vec::with_capacity(d + 1);
            let mut start = vec![S::zero(); s + 1];
            start[s] = S::one();
            p.push(start);
            for m in 1..=d {
                let mut rhs = vec![S::zero(); s + 1];
                for (j, c) in chi.iter().enumerate().skip(1).take(m) {
                    let t = apply_chi(c, &qpow[m - j], &p[m - j]);
                    for (r, v) in rhs.iter_mut().zip(t) {
                        *r = r.sub_ref(&v);
                    }
                }
                p.push(solve_chi(&chi[0], &qpow[m], &rhs).ok_or(QDiffError::Resonance { degree: m })?);
            }
            let mut ls = LogSeries::zero(0, d, s);
            for (m, row) in p.into_iter().enumerate() {
                for (k, c) in row.into_iter().enumerate() {
                    ls.set(m, k, NilpotentElement::scalar(0, c));
                }
            }
            out.push(ls);
        }
        Ok(out)
    }

    /// Apply to a truncated power series using the cleared coefficients;
    /// returns coefficients through the input length.
    pub fn apply_to_series(&self, f: &[S]) -> Vec<S> {
        let polys = self.polynomial_coeffs();
        let len = f.len();
        let mut out = vec![S::zero(); len];
        for (k, a) in polys.iter().enumerate() {
            let qk = self.q.pow_u(k);
            let mut shifted = Vec::with_capacity(len);
            let mut pw = S::one();
            for c in f {
                shifted.push(c.mul_ref(&pw));
                pw = pw.mul_ref(&qk);
            }
            for (j, aj) in a.coeffs().iter().enumerate() {
                for m in 0..len.saturating_sub(j) {
                    out[m + j] = out[m + j].add_ref(&aj.mul_ref(&shifted[m]));
                }
            }
        }
        out
    }
}

impl<S: Scalar + Field> ScalarQOperator<S> {
    /// Apply to a scalar log series (`L ↦ L + 1` under σ) using the cleared
    /// coefficients; exact through the input truncation.
    pub fn apply_to_log_series(&self, f: &LogSeries<S>) -> QDiffResult<LogSeries<S>> {
        let polys = self.polynomial_coeffs();
        let mut out = LogSeries::zero(f.order(), f.truncation(), f.logdegree());
        let mut shifted = f.clone();
        for (k, a) in polys.iter().enumerate() {
            if k > 0 {
                let qk = self.q.clone();
                shifted = shifted.shift_q(|d| qk.pow_u(d))?;
            }
            for (j, aj) in a.coeffs().iter().enumerate() {
                if aj.is_zero() {
                    continue;
                }
                let mut term = shifted.scale(aj);
                for _ in 0..j {
                    term = term.mul_q();
                }
                out = out.add(&term)?;
            }
        }
        Ok(out)
    }
}

impl ScalarQOperator<num_complex::Complex64> {
    /// `Σ_k a_k(Q) f(q^k Q)` for a numeric evaluator `f`.
    pub fn apply_numeric(
        &self,
        f: impl Fn(num_complex::Complex64) -> QDiffResult<num_complex::Complex64>,
        big_q: num_complex::Complex64,
    ) -> QDiffResult<num_complex::Complex64> {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        let mut x = big_q;
        for a in &self.coeffs {
            let c = a.eval(&big_q).ok_or_else(|| QDiffError::Pole(format!("coefficient pole at {big_q}")))?;
            acc += c * f(x)?;
            x *= self.q;
        }
        Ok(acc)
    }
}

/// `T: L ↦ L + 1` on ascending coefficient vectors.
fn shift_l<S: Scalar>(p: &[S]) -> Vec<S> {
    let n = p.len();
    let mut out = vec![S::zero(); n];
    for (s, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut b = S::one();
        for t in (0..=s).rev() {
            out[t] = out[t].add_ref(&c.mul_ref(&b));
            // b = binom(s, t-1) from binom(s, t)
            if t > 0 {
                b = b.mul_ref(&S::from_i64(t as i64)).mul_ref(&S::from_i64((s - t + 1) as i64).try_inv().expect("nonzero"));
            }
        }
    }
    out
}

/// `χ(x·T) p = Σ_k χ_k x^k T^k p`.
fn apply_chi<S: Scalar>(chi: &Poly<S>, x: &S, p: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); p.len()];
    let mut tp = p.to_vec();
    let mut xk = S::one();
    for (k, c) in chi.coeffs().iter().enumerate() {
        if k > 0 {
            tp = shift_l(&tp);
            xk = xk.mul_ref(x);
        }
        if c.is_zero() {
            continue;
        }
        let w = c.mul_ref(&xk);
        for (o, v) in out.iter_mut().zip(&tp) {
            *o = o.add_ref(&w.mul_ref(v));
        }
    }
    out
}

/// Solve `χ(x·T) p = rhs`; the map is upper triangular with diagonal `χ(x)`.
fn solve_chi<S: Scalar>(chi: &Poly<S>, x: &S, rhs: &[S]) -> Option<Vec<S>> {
    let n = rhs.len();
    let inv = chi.eval(x).try_inv()?;
    let cols: Vec<Vec<S>> = (0..n)
        .map(|s| {
            let mut e = vec![S::zero(); n];
            e[s] = S::one();
            apply_chi(chi, x, &e)
        })
        .collect();
    let mut p = vec![S::zero(); n];
    for r in (0..n).rev() {
        let mut acc = rhs[r].clone();
        for (s, col) in cols.iter().enumerate().skip(r + 1) {
            acc = acc.sub_ref(&col[r].mul_ref(&p[s]));
        }
        p[r] = acc.mul_ref(&inv);
    }
    Some(p)
}
