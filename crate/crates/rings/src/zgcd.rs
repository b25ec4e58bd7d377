//! Multi-modular gcd of polynomials with rational coefficients.
//!
//! Inputs are cleared to primitive integer polynomials, gcds are taken modulo
//! 62-bit primes and recombined by CRT. A candidate is accepted only after it
//! divides both inputs exactly, so unlucky primes can delay but never corrupt
//! the result.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

use crate::poly::Poly;

/// Monic gcd over Q. `gcd(0, 0) = 0`.
pub fn gcd_rational(a: &Poly<BigRational>, b: &Poly<BigRational>) -> Poly<BigRational> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let za = primitive_integer(a);
    let zb = primitive_integer(b);
    let g = gcd_integer(&za, &zb);
    Poly::from_coeffs(g.into_iter().map(BigRational::from_integer).collect()).monic()
}

/// Clear denominators and divide by the content; result has a positive leading coefficient.
pub fn primitive_integer(p: &Poly<BigRational>) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
    primitive_part(ints)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return v;
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    if !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(256);
        let mut n: u64 = (1u64 << 62) - 1;
        while out.len() < 256 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap_or(0)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over Z/p.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        let db = b.len() - 1;
        while a.len() > db {
            let k = a.len() - 1 - db;
            let c = mul_mod(*a.last().unwrap(), inv, p);
            if c != 0 {
                for (j, bj) in b.iter().enumerate() {
                    let t = mul_mod(c, *bj, p);
                    a[k + j] = (a[k + j] + p - t) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = pow_mod(l, p - 2, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn symmetric_lift(c: &BigInt, m: &BigInt) -> BigInt {
    let half: BigInt = m >> 1;
    if c > &half {
        c - m
    } else {
        c.clone()
    }
}

/// Exact division test over Z: `den | num` with integer quotient.
fn divides_integer(den: &[BigInt], num: &[BigInt]) -> bool {
    if den.len() > num.len() {
        return false;
    }
    let lead = den.last().unwrap();
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    for k in (0..=(rem.len() - 1 - dd)).rev() {
        let top = &rem[k + dd];
        if top.is_zero() {
            continue;
        }
        let (qk, r) = top.div_rem(lead);
        if !r.is_zero() {
            return false;
        }
        for (j, b) in den.iter().enumerate() {
            rem[k + j] -= &qk * b;
        }
    }
    rem.iter().all(|c| c.is_zero())
}

/// Primitive gcd of primitive integer polynomials (ascending coefficients).
pub fn gcd_integer(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let la = a.last().unwrap();
    let lb = b.last().unwrap();
    let lc = la.gcd(lb);
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut deg: Option<usize> = None;
    let mut last_candidate: Option<Vec<BigInt>> = None;
    for &p in primes() {
        if reduce(la, p) == 0 || reduce(lb, p) == 0 {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let g = gcd_mod(&ap, &bp, p);
        let dg = g.len() - 1;
        if dg == 0 {
            return vec![BigInt::one()];
        }
        let lcp = reduce(&lc, p);
        let g: Vec<u64> = g.iter().map(|c| mul_mod(*c, lcp, p)).collect();
        match deg {
            Some(d) if dg > d => continue,
            Some(d) if dg == d => {
                let pb = BigInt::from(p);
                let inv = BigInt::from(pow_mod(reduce(&modulus, p), p - 2, p));
                for (k, gk) in g.iter().enumerate() {
                    let cur = reduce(&acc[k], p);
                    let diff = (BigInt::from(*gk) - BigInt::from(cur)).mod_floor(&pb);
                    let t = (diff * &inv).mod_floor(&pb);
                    acc[k] = &acc[k] + &modulus * t;
                }
                modulus *= &pb;
            }
            _ => {
                deg = Some(dg);
                acc = g.iter().map(|c| BigInt::from(*c)).collect();
                modulus = BigInt::from(p);
                last_candidate = None;
                continue;
            }
        }
        let lifted: Vec<BigInt> = acc.iter().map(|c| symmetric_lift(c, &modulus)).collect();
        let cand = primitive_part(lifted);
        if last_candidate.as_ref() == Some(&cand) && divides_integer(&cand, a) && divides_integer(&cand, b) {
            return cand;
        }
        last_candidate = Some(cand);
    }
    // Fallback: rational Euclid (never reached for sane inputs).
    let pa = Poly::from_coeffs(a.iter().cloned().map(BigRational::from_integer).collect::<Vec<_>>());
    let pb = Poly::from_coeffs(b.iter().cloned().map(BigRational::from_integer).collect::<Vec<_>>());
    primitive_integer(&pa.gcd_euclid(&pb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(c: &[i64]) -> Poly<BigRational> {
        Poly::from_coeffs(c.iter().map(|&v| rat(v, 1)).collect())
    }

    #[test]
    fn modular_gcd_matches_euclid() {
        let f = p(&[1, -1]).mul(&p(&[2, 0, 3])).mul(&p(&[-7, 5]));
        let g = p(&[1, -1]).mul(&p(&[-7, 5])).mul(&p(&[4, 1, 1, 9]));
        assert_eq!(gcd_rational(&f, &g), f.gcd_euclid(&g));
        assert_eq!(gcd_rational(&f, &g), p(&[1, -1]).mul(&p(&[-7, 5])).monic());
    }

    #[test]
    fn coprime_gives_one() {
        assert_eq!(gcd_rational(&p(&[1, 1]), &p(&[1, -1])), Poly::one());
    }

    #[test]
    fn rational_coefficients() {
        let f = Poly::from_coeffs(vec![rat(1, 2), rat(-1, 3)]).mul(&p(&[1, 0, 1]));
        let g = Poly::from_coeffs(vec![rat(3, 5), rat(-2, 5)]).mul(&p(&[2, 1]));
        assert_eq!(gcd_rational(&f, &g), Poly::from_coeffs(vec![rat(-3, 2), rat(1, 1)]));
    }

    #[test]
    fn big_cyclotomic_products() {
        // (1-q)^5 (1-q^2)^3 vs (1-q^3)^2 (1-q)^2 : gcd (1-q)^4 (1+q) ... computed by Euclid oracle
        let one_minus = |k: usize| {
            let mut c = vec![0i64; k + 1];
            c[0] = 1;
            c[k] = -1;
            p(&c)
        };
        let f = one_minus(1).pow(5).mul(&one_minus(2).pow(3));
        let g = one_minus(3).pow(2).mul(&one_minus(1).pow(2)).mul(&one_minus(2));
        assert_eq!(gcd_rational(&f, &g), f.gcd_euclid(&g));
    }
}
