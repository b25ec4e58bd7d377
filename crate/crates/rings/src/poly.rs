//! Dense univariate polynomials over a [`Scalar`] ring.

use std::fmt;

use crate::error::{RingError, RingResult};
use crate::scalar::Scalar;

/// Dense polynomial; `coeffs[k]` multiplies `x^k`. Trailing zeros are never stored,
/// so the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut v = vec![S::zero(); k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Poly::monomial(S::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn lead(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => S::zero(),
            })
            .collect();
        Poly::from_coeffs(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = v[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::from_coeffs(v)
    }

    pub fn scale(&self, c: &S) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul_ref(&S::from_i64(k as i64)))
            .collect();
        Poly::from_coeffs(v)
    }

    /// `p(c·x)`: coefficient `k` is multiplied by `c^k`.
    pub fn scale_var(&self, c: &S) -> Self {
        let mut pw = S::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a.mul_ref(&pw));
            pw = pw.mul_ref(c);
        }
        Poly::from_coeffs(v)
    }

    /// `p(x + c)`.
    pub fn shift_var(&self, c: &S) -> Self {
        let lin = Poly::from_coeffs(vec![c.clone(), S::one()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, a| acc.mul(&lin).add(&Poly::constant(a.clone())))
    }

    /// Truncate to terms of degree `<= d`.
    pub fn truncate(&self, d: usize) -> Self {
        Poly::from_coeffs(self.coeffs.iter().take(d + 1).cloned().collect())
    }

    /// Euclidean division; requires an invertible leading coefficient of `den`.
    pub fn div_rem(&self, den: &Self) -> RingResult<(Self, Self)> {
        let dd = den.degree().ok_or(RingError::DivisionByZero)?;
        let inv_lead = den.lead().and_then(|l| l.try_inv()).ok_or(RingError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul_ref(&inv_lead);
            if c.is_zero() {
                continue;
            }
            for (j, b) in den.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub_ref(&c.mul_ref(b));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact quotient; errors if the remainder is nonzero.
    pub fn div_exact(&self, den: &Self) -> RingResult<Self> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(RingError::Parse("inexact polynomial division".into()))
        }
    }

    /// Scale so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead().and_then(|l| l.try_inv()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Euclidean gcd, normalized monic. Generic and slow; the exact-rational
    /// specialization lives in [`crate::zgcd`].
    pub fn gcd_euclid(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

/// Render as `c0 + c1*x + c2*x^2 …` with ascending degree.
pub fn format_poly<S: Scalar>(p: &Poly<S>, var: &str, fmt_coeff: impl Fn(&S) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut s = fmt_coeff(c);
        let negative = s.starts_with('-');
        if negative {
            s.remove(0);
        }
        if s.contains(['+', '-']) && !s.starts_with('(') {
            s = format!("({s})");
        }
        let body = match k {
            0 => s,
            _ => {
                let mono = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                if s == "1" {
                    mono
                } else {
                    format!("{s}*{mono}")
                }
            }
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl<S: Scalar + fmt::Display> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(self, "x", |c| c.to_string()))
    }
}
