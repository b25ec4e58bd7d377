//! Genus-zero counts of rational plane curves through `3d − 1` general points.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{GwError, GwResult};

/// `values[d − 1] = N_d`, each an integer.
#[derive(Clone, Debug, PartialEq)]
pub struct NdTable {
    values: Vec<BigInt>,
}

impl NdTable {
    pub fn dmax(&self) -> usize {
        self.values.len()
    }

    /// `N_d` for `1 ≤ d ≤ dmax`.
    pub fn get(&self, d: usize) -> Option<&BigInt> {
        d.checked_sub(1).and_then(|k| self.values.get(k))
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn as_rationals(&self) -> Vec<BigRational> {
        self.values.iter().cloned().map(BigRational::from_integer).collect()
    }

    /// `(d, N_d)` rows in increasing `d`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.values.iter().enumerate().map(|(k, v)| (k + 1, v))
    }
}

/// Kontsevich's recursion, evaluated over `Q`:
/// `N_d = Σ_{d1+d2=d} N_{d1}N_{d2}(C(3d−4, 3d1−2)d1²d2² − C(3d−4, 3d1−1)d1³d2)`.
///
/// Every value is checked to be integral before it is stored.
pub fn nd_recursion(dmax: usize) -> GwResult<NdTable> {
    let mut vals: Vec<BigRational> = Vec::with_capacity(dmax);
    for d in 1..=dmax {
        let v = if d == 1 { BigRational::one() } else { nd_step(&vals, d) };
        if !v.is_integer() {
            return Err(GwError::NonInteger { d, value: v.to_string() });
        }
        vals.push(v);
    }
    Ok(NdTable { values: vals.into_iter().map(|v| v.to_integer()).collect() })
}

fn nd_step(prev: &[BigRational], d: usize) -> BigRational {
    let big = |v: usize| BigInt::from(v);
    let n = big(3 * d - 4);
    let mut acc = BigRational::zero();
    for d1 in 1..d {
        let d2 = d - d1;
        let b1 = binomial(n.clone(), big(3 * d1 - 2));
        let b2 = binomial(n.clone(), big(3 * d1 - 1));
        let w = b1 * big(d1 * d1 * d2 * d2) - b2 * big(d1 * d1 * d1 * d2);
        acc += &prev[d1 - 1] * &prev[d2 - 1] * BigRational::from_integer(w);
    }
    acc
}
