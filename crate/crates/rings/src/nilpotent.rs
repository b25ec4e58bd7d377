//! The truncated ring `S[ε]/(ε^{N+1})`.

use crate::error::{RingError, RingResult};
use crate::scalar::Scalar;

/// `Σ_{k≤N} coeffs[k]·ε^k`; `coeffs.len() == order + 1` always.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentElement<S: Scalar> {
    order: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> NilpotentElement<S> {
    /// Pads with zeros or truncates to length `order + 1`.
    pub fn new(order: usize, mut coeffs: Vec<S>) -> Self {
        coeffs.resize(order + 1, S::zero());
        NilpotentElement { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::scalar(order, S::one())
    }

    pub fn scalar(order: usize, c: S) -> Self {
        Self::new(order, vec![c])
    }

    /// `ε` itself (zero when `order == 0`).
    pub fn epsilon(order: usize) -> Self {
        Self::new(order, vec![S::zero(), S::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) -> RingResult<()> {
        if self.order != other.order {
            Err(RingError::OrderMismatch { left: self.order, right: other.order })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> RingResult<Self> {
        self.check(other)?;
        Ok(NilpotentElement {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add_ref(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> RingResult<Self> {
        self.check(other)?;
        Ok(NilpotentElement {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub_ref(b)).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        NilpotentElement { order: self.order, coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        NilpotentElement { order: self.order, coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect() }
    }

    /// Truncated convolution: coefficient `k` is `Σ_{i+j=k} a_i b_j`.
    pub fn mul(&self, other: &Self) -> RingResult<Self> {
        self.check(other)?;
        let n = self.order;
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Ok(NilpotentElement { order: n, coeffs: out })
    }

    /// `a0⁻¹ Σ_{k≤N} (−u)^k` with `u = a/a0 − 1`.
    pub fn inv(&self) -> RingResult<Self> {
        let a0_inv = self.coeffs[0].try_inv().ok_or(RingError::NonUnit)?;
        let u = {
            let mut c: Vec<S> = self.coeffs.iter().map(|a| a.mul_ref(&a0_inv)).collect();
            c[0] = S::zero();
            NilpotentElement { order: self.order, coeffs: c }
        };
        let minus_u = u.neg();
        let mut acc = Self::one(self.order);
        let mut pw = Self::one(self.order);
        for _ in 0..self.order {
            pw = pw.mul(&minus_u)?;
            acc = acc.add(&pw)?;
        }
        Ok(acc.scale(&a0_inv))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    /// Apply `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        NilpotentElement { order: self.order, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Multiply coefficient `k` by `c^k` (the substitution `ε ↦ c·ε`).
    pub fn scale_epsilon(&self, c: &S) -> Self {
        let mut pw = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul_ref(&pw));
            pw = pw.mul_ref(c);
        }
        NilpotentElement { order: self.order, coeffs: out }
    }
}

/// Free functions mirroring the ring API for call sites that prefer them.
pub fn nil_mul<S: Scalar>(a: &NilpotentElement<S>, b: &NilpotentElement<S>) -> RingResult<NilpotentElement<S>> {
    a.mul(b)
}

pub fn nil_inv<S: Scalar>(a: &NilpotentElement<S>) -> RingResult<NilpotentElement<S>> {
    a.inv()
}
