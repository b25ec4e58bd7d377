//! The nilpotent binomial power `(1 − ε)^L` with `L` a formal symbol.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::Poly;


/// Polynomial in the formal symbol `L` with rational coefficients.
pub type LPoly = Poly<BigRational>;

/// `binom(L, k) = (1/k!) ∏_{r<k} (L − r)` as a polynomial in `L`.
pub fn binom_poly(k: usize) -> LPoly {
    let mut acc = LPoly::one();
    let mut fact = BigInt::one();
    for r in 0..k {
        let lin = Poly::from_coeffs(vec![BigRational::from_integer(BigInt::from(-(r as i64))), BigRational::one()]);
        acc = acc.mul(&lin);
        fact *= BigInt::from(r as i64 + 1);
    }
    acc.scale(&BigRational::new(BigInt::one(), fact))
}

/// `(1 − ε)^L = Σ_{k≤N} (−1)^k binom(L, k) ε^k`; entry `k` is the `ε^k` coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct BinomialPower {
    pub order: usize,
    pub coeffs: Vec<LPoly>,
}

pub fn nil_binomial_power(order: usize) -> BinomialPower {
    let coeffs = (0..=order)
        .map(|k| {
            let b = binom_poly(k);
            if k % 2 == 1 {
                b.neg()
            } else {
                b
            }
        })
        .collect();
    BinomialPower { order, coeffs }
}

impl BinomialPower {
    /// Substitute an integer for `L`.
    pub fn at_integer(&self, m: i64) -> Vec<BigRational> {
        let x = BigRational::from_integer(BigInt::from(m));
        self.coeffs.iter().map(|p| p.eval(&x)).collect()
    }

    /// Coefficient of `ε^k L^j`, zero when out of range.
    pub fn coeff(&self, k: usize, j: usize) -> BigRational {
        self.coeffs.get(k).map(|p| p.coeff(j)).unwrap_or_else(BigRational::zero)
    }

    pub fn coeff_as<S: crate::scalar::Scalar>(&self, k: usize, j: usize) -> S {
        S::from_rational(&self.coeff(k, j))
    }
}
