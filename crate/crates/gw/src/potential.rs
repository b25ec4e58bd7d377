//! The genus-zero potential of ℙ² and its WDVV residual.
//!
//! Monomials are `t0^a t1^b t2^c E^d` where `E = e^{t1}` is kept as an inert
//! variable; `∂/∂t1` acts on both `t1` and `E`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::GwResult;
use crate::nd::nd_recursion;

/// Exponent vector `[a, b, c, d]` of `t0^a t1^b t2^c E^d`.
pub type Monomial = [u32; 4];

/// Sparse polynomial in `t0, t1, t2, E`, truncated at `E`-degree `emax`.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    emax: u32,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Potential {
    pub fn zero(emax: u32) -> Self {
        Potential { emax, terms: BTreeMap::new() }
    }

    pub fn emax(&self) -> u32 {
        self.emax
    }

    pub fn coeff(&self, m: Monomial) -> BigRational {
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if m[3] > self.emax || c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// `∂/∂t_k`, `k ∈ {0, 1, 2}`.
    pub fn derivative(&self, k: usize) -> Self {
        assert!(k < 3, "variables are t0, t1, t2");
        let mut out = Potential::zero(self.emax);
        for (m, c) in &self.terms {
            if m[k] > 0 {
                let mut m2 = *m;
                m2[k] -= 1;
                out.add_term(m2, c * BigRational::from_integer(BigInt::from(m[k])));
            }
            if k == 1 && m[3] > 0 {
                out.add_term(*m, c * BigRational::from_integer(BigInt::from(m[3])));
            }
        }
        out
    }

    pub fn third_derivative(&self, i: usize, j: usize, k: usize) -> Self {
        self.derivative(i).derivative(j).derivative(k)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Potential { emax: self.emax, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product, dropping `E`-degrees above `emax`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Potential::zero(self.emax.min(other.emax));
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(m, x * y);
            }
        }
        out
    }

    /// Nonzero monomial with the smallest `(E, t2, t1, t0)` degree.
    pub fn lowest_term(&self) -> Option<(Monomial, BigRational)> {
        self.terms.iter().min_by_key(|(m, _)| (m[3], m[2], m[1], m[0])).map(|(m, c)| (*m, c.clone()))
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `½(t0 t1² + t0² t2) + Σ_{d≤order} N_d t2^{3d−1}/(3d−1)! E^d`.
pub fn gw_potential_p2(order: u32) -> GwResult<Potential> {
    let nd = nd_recursion(order as usize)?;
    Ok(potential_from_counts(&nd.as_rationals(), order))
}

/// Same potential built from arbitrary `counts[d − 1]`; used to perturb `N_d`.
pub fn potential_from_counts(counts: &[BigRational], order: u32) -> Potential {
    let mut f = Potential::zero(order);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    f.add_term([1, 2, 0, 0], half.clone());
    f.add_term([2, 0, 1, 0], half);
    for (k, n) in counts.iter().enumerate().take(order as usize) {
        let d = k as u32 + 1;
        f.add_term([0, 0, 3 * d - 1, d], n / BigRational::from_integer(factorial(3 * d - 1)));
    }
    f
}

/// `F₂₂₂ + F₁₁₁F₁₂₂ − F₁₁₂²`; zero exactly when the counts satisfy WDVV.
pub fn wdvv_residual(f: &Potential) -> Potential {
    let f111 = f.third_derivative(1, 1, 1);
    let f112 = f.third_derivative(1, 1, 2);
    let f122 = f.third_derivative(1, 2, 2);
    let f222 = f.third_derivative(2, 2, 2);
    f222.add(&f111.mul(&f122)).sub(&f112.mul(&f112))
}

/// Residual of the ℙ² potential through `E^order` (`t2`-degree `3·order − 4`).
pub fn wdvv_residual_p2(order: u32) -> GwResult<Potential> {
    Ok(wdvv_residual(&gw_potential_p2(order)?))
}
