//! Truncated power series in `Q` with nilpotent coefficients.

use crate::error::{RingError, RingResult};
use crate::nilpotent::NilpotentElement;
use crate::scalar::Scalar;

/// `Σ_{d≤D} coeffs[d]·Q^d`; every coefficient has the same nilpotent order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedQSeries<S: Scalar> {
    order: usize,
    coeffs: Vec<NilpotentElement<S>>,
}

impl<S: Scalar> TruncatedQSeries<S> {
    pub fn zero(order: usize, truncation: usize) -> Self {
        TruncatedQSeries { order, coeffs: vec![NilpotentElement::zero(order); truncation + 1] }
    }

    pub fn one(order: usize, truncation: usize) -> Self {
        let mut s = Self::zero(order, truncation);
        s.coeffs[0] = NilpotentElement::one(order);
        s
    }

    pub fn from_coeffs(order: usize, coeffs: Vec<NilpotentElement<S>>) -> RingResult<Self> {
        if coeffs.is_empty() {
            return Err(RingError::TruncationMismatch { left: 0, right: 0 });
        }
        if let Some(c) = coeffs.iter().find(|c| c.order() != order) {
            return Err(RingError::OrderMismatch { left: order, right: c.order() });
        }
        Ok(TruncatedQSeries { order, coeffs })
    }

    /// Scalar series (nilpotent order 0).
    pub fn from_scalars(coeffs: Vec<S>) -> Self {
        TruncatedQSeries { order: 0, coeffs: coeffs.into_iter().map(|c| NilpotentElement::scalar(0, c)).collect() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[NilpotentElement<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &NilpotentElement<S> {
        &self.coeffs[d]
    }

    pub fn set_coeff(&mut self, d: usize, c: NilpotentElement<S>) {
        assert_eq!(c.order(), self.order, "nilpotent order");
        self.coeffs[d] = c;
    }

    /// Scalar coefficient of `Q^d ε^i`.
    pub fn get(&self, d: usize, i: usize) -> &S {
        self.coeffs[d].coeff(i)
    }

    fn check(&self, other: &Self) -> RingResult<()> {
        if self.order != other.order {
            return Err(RingError::OrderMismatch { left: self.order, right: other.order });
        }
        if self.coeffs.len() != other.coeffs.len() {
            return Err(RingError::TruncationMismatch { left: self.truncation(), right: other.truncation() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> RingResult<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect::<RingResult<_>>()?;
        Ok(TruncatedQSeries { order: self.order, coeffs })
    }

    pub fn sub(&self, other: &Self) -> RingResult<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect::<RingResult<_>>()?;
        Ok(TruncatedQSeries { order: self.order, coeffs })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> RingResult<Self> {
        self.check(other)?;
        let dmax = self.truncation();
        let mut coeffs = vec![NilpotentElement::zero(self.order); dmax + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(dmax + 1 - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(TruncatedQSeries { order: self.order, coeffs })
    }

    /// Substitution `Q ↦ c·Q`: coefficient `d` is multiplied by `c^d`.
    pub fn scale_pullback(&self, c: &S) -> Self {
        let mut pw = S::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.scale(&pw));
            pw = pw.mul_ref(c);
        }
        TruncatedQSeries { order: self.order, coeffs }
    }

    /// Multiply by `Q`, dropping the top coefficient.
    pub fn mul_q(&self) -> Self {
        let mut coeffs = vec![NilpotentElement::zero(self.order)];
        coeffs.extend(self.coeffs.iter().take(self.coeffs.len() - 1).cloned());
        TruncatedQSeries { order: self.order, coeffs }
    }

    /// Multiply every coefficient by the same nilpotent element.
    pub fn mul_nil(&self, x: &NilpotentElement<S>) -> RingResult<Self> {
        let coeffs = self.coeffs.iter().map(|a| a.mul(x)).collect::<RingResult<_>>()?;
        Ok(TruncatedQSeries { order: self.order, coeffs })
    }

    pub fn map(&self, f: impl Fn(&NilpotentElement<S>) -> NilpotentElement<S>) -> Self {
        TruncatedQSeries { order: self.order, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Keep degrees `<= d`.
    pub fn truncate(&self, d: usize) -> Self {
        TruncatedQSeries { order: self.order, coeffs: self.coeffs.iter().take(d + 1).cloned().collect() }
    }
}

/// `series_scale_pullback` in free-function form.
pub fn series_scale_pullback<S: Scalar>(s: &TruncatedQSeries<S>, c: &S) -> TruncatedQSeries<S> {
    s.scale_pullback(c)
}
