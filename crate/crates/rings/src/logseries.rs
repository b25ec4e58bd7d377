//! Truncated series in `Q` whose coefficients are polynomials in a formal
//! logarithm `L`, with nilpotent scalar coefficients.
//!
//! `L` stands for `ℓ_q(Q)` (q-difference side) or `log Q` (differential side);
//! it is inert under ring operations. The q-shift sends `Q^d ↦ q^d Q^d` and
//! `L ↦ L + 1` simultaneously.

use crate::binomial::BinomialPower;
use crate::error::{RingError, RingResult};
use crate::nilpotent::NilpotentElement;
use crate::scalar::Scalar;
use crate::series::TruncatedQSeries;

/// `coeffs[d][m]` is the coefficient of `Q^d L^m`, `m ≤ logdegree`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries<S: Scalar> {
    order: usize,
    truncation: usize,
    logdegree: usize,
    coeffs: Vec<Vec<NilpotentElement<S>>>,
}

impl<S: Scalar> LogSeries<S> {
    pub fn zero(order: usize, truncation: usize, logdegree: usize) -> Self {
        LogSeries {
            order,
            truncation,
            logdegree,
            coeffs: vec![vec![NilpotentElement::zero(order); logdegree + 1]; truncation + 1],
        }
    }

    pub fn from_series(s: &TruncatedQSeries<S>) -> Self {
        let mut out = Self::zero(s.order(), s.truncation(), 0);
        for d in 0..=s.truncation() {
            out.coeffs[d][0] = s.coeff(d).clone();
        }
        out
    }

    /// `(1 − ε)^L` as a log series concentrated in degree `Q^0`.
    pub fn from_binomial(bp: &BinomialPower, truncation: usize) -> Self {
        let mut out = Self::zero(bp.order, truncation, bp.order);
        for m in 0..=bp.order {
            let c: Vec<S> = (0..=bp.order).map(|k| bp.coeff_as::<S>(k, m)).collect();
            out.coeffs[0][m] = NilpotentElement::new(bp.order, c);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn logdegree(&self) -> usize {
        self.logdegree
    }

    pub fn coeff(&self, d: usize, m: usize) -> &NilpotentElement<S> {
        &self.coeffs[d][m]
    }

    /// Scalar coefficient of `Q^d ε^i L^m`; zero outside the stored range.
    pub fn get(&self, d: usize, i: usize, m: usize) -> S {
        if d > self.truncation || m > self.logdegree || i > self.order {
            return S::zero();
        }
        self.coeffs[d][m].coeff(i).clone()
    }

    pub fn set(&mut self, d: usize, m: usize, c: NilpotentElement<S>) {
        assert_eq!(c.order(), self.order, "nilpotent order");
        self.coeffs[d][m] = c;
    }

    fn check(&self, other: &Self) -> RingResult<()> {
        if self.order != other.order {
            return Err(RingError::OrderMismatch { left: self.order, right: other.order });
        }
        if self.truncation != other.truncation {
            return Err(RingError::TruncationMismatch { left: self.truncation, right: other.truncation });
        }
        Ok(())
    }

    fn with_logdegree(&self, m: usize) -> Self {
        let mut out = Self::zero(self.order, self.truncation, m);
        for d in 0..=self.truncation {
            for k in 0..=self.logdegree.min(m) {
                out.coeffs[d][k] = self.coeffs[d][k].clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> RingResult<Self> {
        self.check(other)?;
        let m = self.logdegree.max(other.logdegree);
        let mut out = self.with_logdegree(m);
        for d in 0..=self.truncation {
            for k in 0..=other.logdegree {
                out.coeffs[d][k] = out.coeffs[d][k].add(&other.coeffs[d][k])?;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> RingResult<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn map(&self, f: impl Fn(&NilpotentElement<S>) -> NilpotentElement<S>) -> Self {
        LogSeries {
            order: self.order,
            truncation: self.truncation,
            logdegree: self.logdegree,
            coeffs: self.coeffs.iter().map(|row| row.iter().map(&f).collect()).collect(),
        }
    }

    /// Product, truncated in `Q`; `L`-degrees add.
    pub fn mul(&self, other: &Self) -> RingResult<Self> {
        self.check(other)?;
        let m = self.logdegree + other.logdegree;
        let mut out = Self::zero(self.order, self.truncation, m);
        for d1 in 0..=self.truncation {
            for m1 in 0..=self.logdegree {
                let a = &self.coeffs[d1][m1];
                if a.is_zero() {
                    continue;
                }
                for d2 in 0..=(self.truncation - d1) {
                    for m2 in 0..=other.logdegree {
                        let b = &other.coeffs[d2][m2];
                        if b.is_zero() {
                            continue;
                        }
                        out.coeffs[d1 + d2][m1 + m2] = out.coeffs[d1 + d2][m1 + m2].add(&a.mul(b)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiply by a nilpotent constant.
    pub fn mul_nil(&self, x: &NilpotentElement<S>) -> RingResult<Self> {
        let mut out = self.clone();
        for row in out.coeffs.iter_mut() {
            for c in row.iter_mut() {
                *c = c.mul(x)?;
            }
        }
        Ok(out)
    }

    /// σ_q: `Q^d L^m ↦ q^d Q^d (L+1)^m`; `qpow(d)` supplies `q^d`.
    pub fn shift_q(&self, qpow: impl Fn(usize) -> S) -> RingResult<Self> {
        let mut out = Self::zero(self.order, self.truncation, self.logdegree);
        let binoms: Vec<Vec<S>> = (0..=self.logdegree)
            .map(|m| {
                let mut row = vec![S::one(); m + 1];
                for k in 1..m {
                    row[k] = row[k - 1].mul_ref(&S::from_i64((m - k + 1) as i64)).mul_ref(
                        &S::from_i64(k as i64).try_inv().expect("nonzero integer"),
                    );
                }
                row
            })
            .collect();
        for d in 0..=self.truncation {
            let qd = qpow(d);
            for m in 0..=self.logdegree {
                let c = &self.coeffs[d][m];
                if c.is_zero() {
                    continue;
                }
                let cq = c.scale(&qd);
                for k in 0..=m {
                    out.coeffs[d][k] = out.coeffs[d][k].add(&cq.scale(&binoms[m][k]))?;
                }
            }
        }
        Ok(out)
    }

    /// `Q∂_Q`: `Q^d L^m ↦ d·Q^d L^m + m·Q^d L^{m−1}` (here `L = log Q`).
    pub fn q_derivative(&self) -> RingResult<Self> {
        let mut out = Self::zero(self.order, self.truncation, self.logdegree);
        for d in 0..=self.truncation {
            for m in 0..=self.logdegree {
                let c = &self.coeffs[d][m];
                if c.is_zero() {
                    continue;
                }
                out.coeffs[d][m] = out.coeffs[d][m].add(&c.scale(&S::from_i64(d as i64)))?;
                if m > 0 {
                    out.coeffs[d][m - 1] = out.coeffs[d][m - 1].add(&c.scale(&S::from_i64(m as i64)))?;
                }
            }
        }
        Ok(out)
    }

    /// Multiply by `Q`, dropping the top degree.
    pub fn mul_q(&self) -> Self {
        let mut out = Self::zero(self.order, self.truncation, self.logdegree);
        for d in 1..=self.truncation {
            out.coeffs[d] = self.coeffs[d - 1].clone();
        }
        out
    }

    /// Substitution `Q ↦ c·Q` on the power part (`L` untouched).
    pub fn scale_pullback(&self, c: &S) -> Self {
        let mut out = self.clone();
        let mut pw = S::one();
        for row in out.coeffs.iter_mut() {
            for a in row.iter_mut() {
                *a = a.scale(&pw);
            }
            pw = pw.mul_ref(c);
        }
        out
    }

    /// True when all coefficients of degree `<= dmax` vanish.
    pub fn is_zero_through(&self, dmax: usize) -> bool {
        self.coeffs.iter().take(dmax + 1).all(|row| row.iter().all(|c| c.is_zero()))
    }

    /// Highest `L`-power carrying a nonzero coefficient, if any.
    pub fn effective_logdegree(&self) -> Option<usize> {
        (0..=self.logdegree).rev().find(|&m| self.coeffs.iter().any(|row| !row[m].is_zero()))
    }

    /// Extract the `ε^i` component as a scalar log series.
    pub fn epsilon_component(&self, i: usize) -> LogSeries<S> {
        let mut out = LogSeries::zero(0, self.truncation, self.logdegree);
        for d in 0..=self.truncation {
            for m in 0..=self.logdegree {
                out.coeffs[d][m] = NilpotentElement::scalar(0, self.coeffs[d][m].coeff(i).clone());
            }
        }
        out
    }

    /// Substitute an integer for `L`, collapsing to a power series.
    pub fn at_integer(&self, l: i64) -> TruncatedQSeries<S> {
        let x = S::from_i64(l);
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                let mut acc = NilpotentElement::zero(self.order);
                let mut pw = S::one();
                for c in row {
                    acc = acc.add(&c.scale(&pw)).expect("same order");
                    pw = pw.mul_ref(&x);
                }
                acc
            })
            .collect();
        TruncatedQSeries::from_coeffs(self.order, coeffs).expect("consistent order")
    }
}
