//! Rational functions of `Q` with coefficients in a [`Scalar`] ring.
//!
//! Stored unreduced except for a common power of `Q`, which is always
//! stripped. Two fractions are equal when their cross products agree.

use qonf_rings::{Poly, Scalar};

#[derive(Clone, Debug)]
pub struct QRational<S: Scalar> {
    num: Poly<S>,
    den: Poly<S>,
}

impl<S: Scalar> PartialEq for QRational<S> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

fn shift_down<S: Scalar>(p: &Poly<S>, k: usize) -> Poly<S> {
    Poly::from_coeffs(p.coeffs()[k..].to_vec())
}

impl<S: Scalar> QRational<S> {
    /// `None` when `den` is zero.
    pub fn new(num: Poly<S>, den: Poly<S>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let k = num.valuation().unwrap().min(den.valuation().unwrap());
        Some(QRational { num: shift_down(&num, k), den: shift_down(&den, k) })
    }

    pub fn from_poly(p: Poly<S>) -> Self {
        QRational { num: p, den: Poly::one() }
    }

    pub fn constant(c: S) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    /// The variable `Q`.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn numer(&self) -> &Poly<S> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<S> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Order at `Q = 0`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        Some(self.num.valuation()? as i64 - self.den.valuation().expect("nonzero denominator") as i64)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone()).expect("nonzero");
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).expect("nonzero")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        QRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero")
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero")
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(QRational { num: self.den.clone(), den: self.num.clone() })
        }
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: usize) -> Self {
        QRational { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `f(c·Q)`; with `c = q` this is σ_q.
    pub fn scale_var(&self, c: &S) -> Self {
        Self::new(self.num.scale_var(c), self.den.scale_var(c)).expect("nonzero")
    }

    /// Value at `Q = x`; `None` at a zero of the denominator.
    pub fn eval(&self, x: &S) -> Option<S> {
        let d = self.den.eval(x);
        Some(self.num.eval(x).mul_ref(&d.try_inv()?))
    }

    /// Taylor coefficients at `Q = 0` through degree `deg`; `None` for a pole at 0.
    pub fn taylor(&self, deg: usize) -> Option<Vec<S>> {
        let d0 = self.den.coeff(0).try_inv()?;
        let mut out: Vec<S> = Vec::with_capacity(deg + 1);
        for m in 0..=deg {
            let mut acc = self.num.coeff(m);
            for k in 1..=m.min(self.den.coeffs().len().saturating_sub(1)) {
                acc = acc.sub_ref(&self.den.coeff(k).mul_ref(&out[m - k]));
            }
            out.push(acc.mul_ref(&d0));
        }
        Some(out)
    }

    /// Coefficientwise image; `None` if the denominator maps to zero.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Option<QRational<T>> {
        QRational::new(self.num.map(&f), self.den.map(&f))
    }
}
