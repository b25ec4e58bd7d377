//! Small quantum rings `K[ε, Q]/(ε^{N+1} − Q)` and `H[H, Q]/(H^{N+1} − Q)`.
//!
//! Elements are reduced to `Σ c[a][b] Q^a ε^b` with `b ≤ N`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use qonf_rings::{chern_iso, HClass, KClass, NilpotentElement};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallQuantumRing {
    pub n: usize,
}

/// `c[a][b]` is the coefficient of `Q^a x^b`, `b ≤ N`.
pub type Reduced = Vec<Vec<BigRational>>;

impl SmallQuantumRing {
    pub fn new(n: usize) -> Self {
        SmallQuantumRing { n }
    }

    /// Reduce `Σ p[k] x^k` using `x^{N+1} = Q`.
    pub fn reduce(&self, p: &[BigRational]) -> Reduced {
        let w = self.n + 1;
        let rows = p.len().div_ceil(w).max(1);
        let mut out = vec![vec![BigRational::zero(); w]; rows];
        for (k, c) in p.iter().enumerate() {
            out[k / w][k % w] += c;
        }
        out
    }

    /// `x^k` reduced.
    pub fn power(&self, k: usize) -> Reduced {
        let mut p = vec![BigRational::zero(); k + 1];
        p[k] = BigRational::one();
        self.reduce(&p)
    }

    pub fn mul(&self, a: &Reduced, b: &Reduced) -> Reduced {
        let w = self.n + 1;
        let mut flat = vec![BigRational::zero(); (a.len() + b.len()) * w];
        for (qa, ra) in a.iter().enumerate() {
            for (ia, x) in ra.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (qb, rb) in b.iter().enumerate() {
                    for (ib, y) in rb.iter().enumerate() {
                        // Q^{qa+qb} x^{ia+ib}: unfold to a single x-power before reducing.
                        flat[(qa + qb) * w + ia + ib] += x * y;
                    }
                }
            }
        }
        trim(self.reduce(&flat))
    }
}

fn trim(mut r: Reduced) -> Reduced {
    while r.len() > 1 && r.last().is_some_and(|row| row.iter().all(|c| c.is_zero())) {
        r.pop();
    }
    r
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantumRingChecks {
    pub n: usize,
    /// `ε^{N+1+k} = Q·ε^k` for `k ≤ N`.
    pub power_reduction: bool,
    /// `(ε^a ε^b) ε^c = ε^a (ε^b ε^c)` for `a, b, c ≤ N`.
    pub associative: bool,
    /// The symbol of `(1 − σ)^{N+1} − Q` at `σ ↦ P⁻¹ = 1 − ε` is `ε^{N+1} − Q`.
    pub operator_symbol: bool,
    /// `ε^b ↦ H^b` carries the K-relation to `H^{N+1} = Q`.
    pub chern_match: bool,
}

impl QuantumRingChecks {
    pub fn all(&self) -> bool {
        self.power_reduction && self.associative && self.operator_symbol && self.chern_match
    }
}

pub fn small_quantum_rings(n: usize) -> QuantumRingChecks {
    let ring = SmallQuantumRing::new(n);
    let w = n + 1;
    let power_reduction = (0..=n).all(|k| {
        let r = ring.power(w + k);
        r.len() == 2
            && r[0].iter().all(|c| c.is_zero())
            && r[1].iter().enumerate().all(|(b, c)| if b == k { c.is_one() } else { c.is_zero() })
    });
    let associative = (0..=n).all(|a| {
        (0..=n).all(|b| {
            (0..=n).all(|c| {
                let (pa, pb, pc) = (ring.power(a), ring.power(b), ring.power(c));
                ring.mul(&ring.mul(&pa, &pb), &pc) == ring.mul(&pa, &ring.mul(&pb, &pc))
            })
        })
    });
    // (1 − (1 − ε))^{N+1} expands to ε^{N+1}; subtracting Q must reduce to zero.
    let mut sym = vec![BigRational::zero(); w + 1];
    let binom = |k: usize| -> BigRational {
        let mut c = BigRational::one();
        for r in 0..k {
            c = c * BigRational::from_integer((w - r).into()) / BigRational::from_integer((r + 1).into());
        }
        c
    };
    for k in 0..=w {
        // (1 − x)^{N+1} with x = 1 − ε: Σ_k binom(N+1,k)(−x)^k, then expand x^k.
        let sign = if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let bk = binom(k) * sign;
        let mut xk = vec![BigRational::one()];
        for _ in 0..k {
            let mut next = vec![BigRational::zero(); xk.len() + 1];
            for (e, c) in xk.iter().enumerate() {
                next[e] += c;
                next[e + 1] -= c;
            }
            xk = next;
        }
        for (e, c) in xk.iter().enumerate() {
            sym[e] += &bk * c;
        }
    }
    let mut red = ring.reduce(&sym);
    red[1][0] -= BigRational::one();
    let operator_symbol = red.iter().all(|row| row.iter().all(|c| c.is_zero()));
    let chern_match = (0..=n).all(|k| {
        let k_side = ring.power(w + k);
        let h_side: Vec<Vec<BigRational>> = k_side
            .iter()
            .map(|row| {
                let cls: HClass<BigRational> = chern_iso(&KClass(NilpotentElement::new(n, row.clone())));
                cls.0.coeffs().to_vec()
            })
            .collect();
        h_side == ring.power(w + k)
    });
    QuantumRingChecks { n, power_reduction, associative, operator_symbol, chern_match }
}
