//! The K-theoretic J-function of ℙᴺ over `Q(q)[ε]/(ε^{N+1})`, `ε = 1 − P⁻¹`.
//!
//! `J = Σ_d Q^d / (qP⁻¹;q)_d^{N+1}` with `1 − q^r P⁻¹ = (1 − q^r) + q^r ε`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use qonf_rings::par::{map_collect, Exec};
use qonf_rings::{nil_binomial_power, qfactorial, LogSeries, NilpotentElement, RationalFunctionQ as R, Scalar, TruncatedQSeries};

use crate::error::GwResult;

/// `(1 − q^r P⁻¹)^{−(N+1)}` in `Q(q)[ε]/(ε^{N+1})`.
fn inverse_factor(n: usize, r: usize) -> GwResult<NilpotentElement<R>> {
    let f = NilpotentElement::new(n, vec![R::one_minus_q_pow(r), R::q_pow(r)]);
    Ok(f.pow(n + 1).inv()?)
}

/// Coefficients `c_{d,i}` of `Q^d ε^i` for `d ≤ dmax`.
pub fn jk_series(n: usize, dmax: usize) -> GwResult<TruncatedQSeries<R>> {
    jk_series_with(n, dmax, Exec::default())
}

/// Factor inverses are computed per degree under `exec`, then chained.
pub fn jk_series_with(n: usize, dmax: usize, exec: Exec) -> GwResult<TruncatedQSeries<R>> {
    let factors = map_collect(exec, (1..=dmax).collect(), |r| inverse_factor(n, r));
    let mut coeffs = Vec::with_capacity(dmax + 1);
    let mut acc = NilpotentElement::one(n);
    coeffs.push(acc.clone());
    for f in factors {
        acc = acc.mul(&f?)?;
        coeffs.push(acc.clone());
    }
    Ok(TruncatedQSeries::from_coeffs(n, coeffs)?)
}

/// Elementary symmetric sums `e_l(d) = Σ_{1≤m1<…<ml≤d} ∏ q^{m}/(1 − q^{m})`
/// for `l ≤ n`, `d ≤ dmax`; `out[d][l]`.
pub fn elementary_sums(n: usize, dmax: usize) -> Vec<Vec<R>> {
    let mut out = Vec::with_capacity(dmax + 1);
    let mut e = vec![R::zero(); n + 1];
    e[0] = R::one();
    out.push(e.clone());
    for m in 1..=dmax {
        let u = &R::q_pow(m) / &R::one_minus_q_pow(m);
        for l in (1..=n).rev() {
            e[l] = &e[l] + &(&u * &e[l - 1]);
        }
        out.push(e.clone());
    }
    out
}

/// All `(j_1, …, j_n)` with `Σ l·j_l = i`.
fn weighted_compositions(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(l: usize, n: usize, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if l > n {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for j in 0..=rest / l {
            cur.push(j);
            go(l + 1, n, rest - j * l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, i, &mut Vec::with_capacity(n), &mut out);
    out
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, v| acc * BigInt::from(v))
}

/// `J_i = Σ_d Q^d/(q;q)_d^{N+1} Σ_k Σ_j (−1)^k (N+k)!/(N! j_1!…j_N!) ∏ e_l^{j_l}`,
/// the inner sum over `Σ j_l = k`, `Σ l·j_l = i`.
pub fn jk_closed_formula(n: usize, dmax: usize) -> GwResult<TruncatedQSeries<R>> {
    jk_closed_formula_with(n, dmax, Exec::default())
}

pub fn jk_closed_formula_with(n: usize, dmax: usize, exec: Exec) -> GwResult<TruncatedQSeries<R>> {
    let e = elementary_sums(n, dmax);
    let patterns: Vec<Vec<(R, Vec<usize>)>> = (0..=n)
        .map(|i| {
            weighted_compositions(n, i)
                .into_iter()
                .map(|j| {
                    let k: usize = j.iter().sum();
                    let denom = j.iter().fold(factorial(n), |acc, &x| acc * factorial(x));
                    let mut c = BigRational::new(factorial(n + k), denom);
                    if k % 2 == 1 {
                        c = -c;
                    }
                    (R::constant(c), j)
                })
                .collect()
        })
        .collect();
    let coeffs = map_collect(exec, (0..=dmax).collect(), |d| {
        let base = qfactorial(d).pow(n + 1).inv().expect("(q;q)_d is nonzero");
        let col: Vec<R> = patterns
            .iter()
            .map(|terms| {
                let mut s = R::zero();
                for (c, j) in terms {
                    let mut t = c.clone();
                    for (l, &jl) in j.iter().enumerate() {
                        if jl > 0 {
                            t = &t * &e[d][l + 1].pow(jl);
                        }
                    }
                    s = &s + &t;
                }
                &s * &base
            })
            .collect();
        NilpotentElement::new(n, col)
    });
    Ok(TruncatedQSeries::from_coeffs(n, coeffs)?)
}

/// `J̃ = P^{−ℓ_q(Q)} J` with `P^{−ℓ} = (1 − ε)^ℓ = Σ_k (−1)^k binom(ℓ, k) ε^k`;
/// `L` stands for `ℓ_q(Q)`.
pub fn jk_modified(n: usize, dmax: usize) -> GwResult<LogSeries<R>> {
    modify(&jk_series(n, dmax)?)
}

pub fn modify(j: &TruncatedQSeries<R>) -> GwResult<LogSeries<R>> {
    let pref = LogSeries::<R>::from_binomial(&nil_binomial_power(j.order()), j.truncation());
    Ok(pref.mul(&LogSeries::from_series(j))?)
}

/// `σ_q` on a log series: `Q^d ↦ q^d Q^d`, `L ↦ L + 1`.
pub fn sigma(f: &LogSeries<R>) -> GwResult<LogSeries<R>> {
    Ok(f.shift_q(R::q_pow)?)
}

/// `[(1 − σ)^{N+1} − Q] f`.
pub fn pn_apply(f: &LogSeries<R>, n: usize) -> GwResult<LogSeries<R>> {
    let mut g = f.clone();
    for _ in 0..=n {
        g = g.sub(&sigma(&g)?)?;
    }
    Ok(g.sub(&f.mul_q())?)
}

/// Residual of the modified J-function; vanishes through degree `dmax`.
pub fn jk_qde_residual(n: usize, dmax: usize) -> GwResult<LogSeries<R>> {
    pn_apply(&jk_modified(n, dmax)?, n)
}

/// `P⁻¹σ`: `Q^d ↦ q^d Q^d` followed by multiplication by `1 − ε`.
pub fn twisted_sigma(f: &TruncatedQSeries<R>) -> GwResult<TruncatedQSeries<R>> {
    let n = f.order();
    let one_minus_eps = NilpotentElement::new(n, vec![R::one(), -R::one()]);
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(d, c)| c.scale(&R::q_pow(d)).mul(&one_minus_eps))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruncatedQSeries::from_coeffs(n, coeffs)?)
}

/// `[(1 − P⁻¹σ)^{N+1} − Q] J` for the unmodified J-function.
pub fn jk_twisted_residual(n: usize, dmax: usize) -> GwResult<TruncatedQSeries<R>> {
    let j = jk_series(n, dmax)?;
    let mut g = j.clone();
    for _ in 0..=n {
        g = g.sub(&twisted_sigma(&g)?)?;
    }
    Ok(g.sub(&j.mul_q())?)
}

/// True when `Q^d ε^i` vanishes in `j` for every `d ≤ dmax`.
pub fn series_zero_through<S: Scalar>(j: &TruncatedQSeries<S>, dmax: usize) -> bool {
    j.coeffs().iter().take(dmax + 1).all(|c| c.is_zero())
}
