//! Exact rational functions of the deformation parameter `q`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{RingError, RingResult};
use crate::poly::{format_poly, Poly};
use crate::scalar::rational_to_f64;
use crate::zgcd::gcd_rational;

/// Polynomial in `q` with exact rational coefficients.
pub type QPoly = Poly<BigRational>;

/// `num/den` with `gcd(num, den) = 1` and `den` monic. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionQ {
    num: QPoly,
    den: QPoly,
}

impl RationalFunctionQ {
    pub fn zero() -> Self {
        RationalFunctionQ { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RationalFunctionQ { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunctionQ { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(v)))
    }

    /// The deformation parameter `q` itself.
    pub fn q() -> Self {
        Self::from_poly(Poly::x())
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        Self::from_poly(Poly::monomial(BigRational::one(), k))
    }

    /// `1 - q^k`.
    pub fn one_minus_q_pow(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[0] = BigRational::one();
        c[k] = c[k].clone() - BigRational::one();
        Self::from_poly(Poly::from_coeffs(c))
    }

    pub fn from_poly(p: QPoly) -> Self {
        RationalFunctionQ { num: p, den: Poly::one() }
    }

    /// Reduce `num/den`; errors on a zero denominator.
    pub fn new(num: QPoly, den: QPoly) -> RingResult<Self> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let g = gcd_rational(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        Ok(Self::normalize_lead(num, den))
    }

    fn normalize_lead(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lead = den.lead().cloned().expect("nonzero denominator");
        if lead.is_one() {
            RationalFunctionQ { num, den }
        } else {
            let inv = lead.recip();
            RationalFunctionQ { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn inv(&self) -> RingResult<Self> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::normalize_lead(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: usize) -> Self {
        RationalFunctionQ { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Exact value at `q = 1`.
    ///
    /// The stored form is already reduced, so a vanishing denominator means a
    /// genuine pole.
    pub fn limit_q_to_1(&self) -> RingResult<BigRational> {
        let one = BigRational::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            return Err(RingError::LimitUndefined);
        }
        Ok(self.num.eval(&one) / d)
    }

    /// Exact value at a rational point; `None` at a pole.
    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(q);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(q) / d)
        }
    }

    /// Value at a complex `q`. Near `q = 1` both polynomials are expanded in
    /// `q − 1` first, so factors `(1 − q)^k` keep their relative accuracy.
    pub fn eval_complex(&self, q: Complex64) -> Complex64 {
        let horner = |p: &QPoly, x: Complex64| {
            p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + rational_to_f64(c))
        };
        let h = q - 1.0;
        if h.norm() < 0.5 && !(self.num.is_constant() && self.den.is_constant()) {
            let one = BigRational::one();
            return horner(&self.num.shift_var(&one), h) / horner(&self.den.shift_var(&one), h);
        }
        horner(&self.num, q) / horner(&self.den, q)
    }

    /// Order of vanishing at `q = 1` (negative for a pole).
    pub fn order_at_one(&self) -> i64 {
        fn ord(p: &QPoly) -> i64 {
            let lin = Poly::from_coeffs(vec![-BigRational::one(), BigRational::one()]);
            let mut k = 0;
            let mut cur = p.clone();
            while !cur.is_zero() && cur.eval(&BigRational::one()).is_zero() {
                cur = cur.div_exact(&lin).expect("root at 1");
                k += 1;
            }
            k
        }
        ord(&self.num) - ord(&self.den)
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_constant() {
                return Self::normalize_lead(num, self.den.clone());
            }
            return Self::new(num, self.den.clone()).expect("nonzero denominator");
        }
        let g = gcd_rational(&self.den, &other.den);
        if g.is_constant() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::normalize_lead(num, self.den.mul(&other.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        let den = b1.mul(&other.den);
        let g2 = gcd_rational(&num, &g);
        if g2.is_constant() {
            Self::normalize_lead(num, den)
        } else {
            Self::normalize_lead(num.div_exact(&g2).expect("gcd divides"), den.div_exact(&g2).expect("gcd divides"))
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let cross = |n: &QPoly, d: &QPoly| -> (QPoly, QPoly) {
            if d.is_constant() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = gcd_rational(n, d);
            if g.is_constant() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
            }
        };
        let (a, d) = cross(&self.num, &other.den);
        let (c, b) = cross(&other.num, &self.den);
        Self::normalize_lead(a.mul(&c), b.mul(&d))
    }

    /// `f(c·q)`.
    pub fn scale_var(&self, c: &BigRational) -> Self {
        Self::new(self.num.scale_var(c), self.den.scale_var(c)).expect("nonzero denominator")
    }

    /// Integer-coefficient rendering `(num, den)` sharing a common scale factor.
    pub fn integer_strings(&self, var: &str) -> (String, String) {
        use num_integer::Integer;
        let l = self
            .num
            .coeffs()
            .iter()
            .chain(self.den.coeffs().iter())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let lr = BigRational::from_integer(l);
        let fmt = |p: &QPoly| format_poly(&p.scale(&lr), var, |c| c.to_integer().to_string());
        (fmt(&self.num), fmt(&self.den))
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_poly(&self.num, "q", |c| c.to_string());
        if self.den.is_one_poly() {
            write!(f, "{num}")
        } else {
            let den = format_poly(&self.den, "q", |c| c.to_string());
            write!(f, "({num})/({den})")
        }
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for QPoly {
    fn is_one_poly(&self) -> bool {
        self.coeffs().len() == 1 && self.coeffs()[0].is_one()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a RationalFunctionQ> for &'a RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: &'a RationalFunctionQ) -> RationalFunctionQ {
                $body(self, rhs)
            }
        }
        impl $tr for RationalFunctionQ {
            type Output = RationalFunctionQ;
            fn $m(self, rhs: RationalFunctionQ) -> RationalFunctionQ {
                $body(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RationalFunctionQ, b: &RationalFunctionQ| a.add_impl(b));
forward_binop!(Sub, sub, |a: &RationalFunctionQ, b: &RationalFunctionQ| a.add_impl(&-b));
forward_binop!(Mul, mul, |a: &RationalFunctionQ, b: &RationalFunctionQ| a.mul_impl(b));
forward_binop!(Div, div, |a: &RationalFunctionQ, b: &RationalFunctionQ| a
    .mul_impl(&b.inv().expect("division by zero rational function")));

impl Neg for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        RationalFunctionQ { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        -&self
    }
}

/// `(a;q)_d = ∏_{r<d} (1 - a q^r)` for a rational-function argument.
pub fn qpoch_exact(a: &RationalFunctionQ, d: usize) -> RationalFunctionQ {
    let q = RationalFunctionQ::q();
    let mut acc = RationalFunctionQ::one();
    let mut term = a.clone();
    for _ in 0..d {
        acc = &acc * &(&RationalFunctionQ::one() - &term);
        term = &term * &q;
    }
    acc
}

/// `(q;q)_d`.
pub fn qfactorial(d: usize) -> RationalFunctionQ {
    (1..=d).fold(RationalFunctionQ::one(), |acc, r| &acc * &RationalFunctionQ::one_minus_q_pow(r))
}
