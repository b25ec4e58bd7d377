//! Exact q → 1 comparison of the two J-functions of ℙᴺ.
//!
//! The K-side is rescaled by `ε^i ↦ ((1 − q)/z)^i H^i` and pulled back along
//! `Q ↦ ((1 − q)/z)^{N+1} Q`. With `λ = (q − 1)ℓ_q(Q)` the coefficient of
//! `Q^d H^i λ^m` is
//! `κ_{d,i,m} = Σ_{a=m}^{i} (q−1)^{a−m} [L^m]binom(L, a) (1−q)^{i−a+d(N+1)} c_{d,i−a}`,
//! with `z`-weight `−(d(N+1) + i)` matching the cohomological side. Since
//! `λ → log Q`, the limit of `κ` must equal the coefficient of `Q^d H^i (log Q)^m`
//! in `Q^{H/z} J^coh` at `z = 1`.

use num_rational::BigRational;
use qonf_rings::par::{map_collect, Exec};
use qonf_rings::{binom_poly, LogSeries, NilpotentElement, RationalFunctionQ as R, RingError, TruncatedQSeries};
use serde::Serialize;

use crate::error::{GwError, GwResult};
use crate::jcoh::{jcoh_modified, jcoh_series};
use crate::jk::jk_series_with;

/// `κ` as a log series in `λ` (the formal symbol `L`).
pub fn k_side_scaled(j: &TruncatedQSeries<R>, exec: Exec) -> LogSeries<R> {
    let n = j.order();
    let dmax = j.truncation();
    let qm1 = &R::q() - &R::one();
    let omq = &R::one() - &R::q();
    let binoms: Vec<_> = (0..=n).map(binom_poly).collect();
    let rows = map_collect(exec, (0..=dmax).collect(), |d| {
        (0..=n)
            .map(|m| {
                let col: Vec<R> = (0..=n)
                    .map(|i| {
                        let mut s = R::zero();
                        for a in m..=i {
                            let b = binoms[a].coeff(m);
                            let c = j.get(d, i - a);
                            if num_traits::Zero::is_zero(&b) || c.is_zero() {
                                continue;
                            }
                            let t = &(&qm1.pow(a - m) * &R::constant(b)) * &(&omq.pow(i - a + d * (n + 1)) * c);
                            s = &s + &t;
                        }
                        s
                    })
                    .collect();
                NilpotentElement::new(n, col)
            })
            .collect::<Vec<_>>()
    });
    let mut out = LogSeries::zero(n, dmax, n);
    for (d, row) in rows.into_iter().enumerate() {
        for (m, c) in row.into_iter().enumerate() {
            out.set(d, m, c);
        }
    }
    out
}

/// Coefficientwise `q → 1`; a pole is reported with its location.
pub fn limit_log_series(s: &LogSeries<R>) -> GwResult<LogSeries<BigRational>> {
    let n = s.order();
    let mut out = LogSeries::zero(n, s.truncation(), s.logdegree());
    for d in 0..=s.truncation() {
        for m in 0..=s.logdegree() {
            let col = (0..=n)
                .map(|i| match s.get(d, i, m).limit_q_to_1() {
                    Ok(v) => Ok(v),
                    Err(RingError::LimitUndefined) => Err(GwError::LimitUndefined { d, i, m }),
                    Err(e) => Err(e.into()),
                })
                .collect::<GwResult<Vec<_>>>()?;
            out.set(d, m, NilpotentElement::new(n, col));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub d: usize,
    pub i: usize,
    pub m: usize,
    pub k_limit: String,
    pub coh: String,
}

#[derive(Clone, Debug)]
pub struct ConfluenceComparison {
    pub n: usize,
    pub dmax: usize,
    pub k_limit: LogSeries<BigRational>,
    pub coh: LogSeries<BigRational>,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ConfluenceComparison {
    pub fn is_exact(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare `lim_{q→1}` of the rescaled K-theoretic J-function with the
/// cohomological one on every `(d, i, m)` with `d ≤ dmax`.
pub fn confluence_compare(n: usize, dmax: usize) -> GwResult<ConfluenceComparison> {
    confluence_compare_with(n, dmax, Exec::default())
}

pub fn confluence_compare_with(n: usize, dmax: usize, exec: Exec) -> GwResult<ConfluenceComparison> {
    let j = jk_series_with(n, dmax, exec)?;
    let k_limit = limit_log_series(&k_side_scaled(&j, exec))?;
    let coh = jcoh_modified(n, dmax)?;
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for d in 0..=dmax {
        for i in 0..=n {
            for m in 0..=n {
                checked += 1;
                let a = k_limit.get(d, i, m);
                let b = coh.get(d, i, m);
                if a != b {
                    mismatches.push(Mismatch { d, i, m, k_limit: a.to_string(), coh: b.to_string() });
                }
            }
        }
    }
    Ok(ConfluenceComparison { n, dmax, k_limit, coh, checked, mismatches })
}

/// One line of the ℙ² correspondence table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub k_side: String,
    pub h_side: String,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct P2Table {
    pub dmax: usize,
    pub rows: Vec<TableRow>,
}

impl P2Table {
    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(|r| r.verified)
    }

    pub fn render(&self) -> String {
        let w = self.rows.iter().map(|r| r.k_side.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for r in &self.rows {
            let pad = w - r.k_side.chars().count();
            let mark = if r.verified { "ok" } else { "FAILED" };
            out.push_str(&format!("{}{}  ⇝  {}   [{mark}, d ≤ {}]\n", r.k_side, " ".repeat(pad), r.h_side, self.dmax));
        }
        out
    }
}

fn rat_int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// The ℙ² table: each K-side column, written through `Σ q^j/(1 − q^j)` and
/// `Σ_{1≤i<j≤d} q^{i+j}/((1 − q^i)(1 − q^j))`, is rebuilt from those sums and
/// checked against the J-functions, and its rescaled limit against the
/// cohomological column built from `Σ 1/j` and `Σ_{1≤i<j≤d} 1/(ij)`.
pub fn p2_table(dmax: usize) -> GwResult<P2Table> {
    let j = jk_series_with(2, dmax, Exec::default())?;
    let h = jcoh_series(2, dmax)?;
    let mut ok = [true; 3];
    for d in 0..=dmax {
        let base = qonf_rings::qfactorial(d).pow(3).inv()?;
        let mut s1 = R::zero();
        let mut s2 = R::zero();
        let mut h1 = BigRational::from_integer(0.into());
        let mut h2 = h1.clone();
        let mut fact = BigRational::from_integer(1.into());
        for r in 1..=d {
            let u = &R::q_pow(r) / &R::one_minus_q_pow(r);
            s2 = &s2 + &(&u * &s1);
            s1 = &s1 + &u;
            let v = BigRational::new(1.into(), (r as i64).into());
            h2 = &h2 + &v * &h1;
            h1 = &h1 + &v;
            fact *= rat_int(r as i64);
        }
        let hbase = (&fact * &fact * &fact).recip();
        let k_cols = [
            base.clone(),
            &(&R::from_integer(-3) * &s1) * &base,
            &(&(&R::from_integer(6) * &s1.pow(2)) - &(&R::from_integer(3) * &s2)) * &base,
        ];
        let h_cols = [hbase.clone(), rat_int(-3) * &h1 * &hbase, (rat_int(6) * &h1 * &h1 - rat_int(3) * &h2) * &hbase];
        let omq = &R::one() - &R::q();
        for i in 0..3 {
            let scaled = &omq.pow(i + 3 * d) * &k_cols[i];
            let lim = scaled.limit_q_to_1().map_err(|_| GwError::LimitUndefined { d, i, m: 0 })?;
            ok[i] &= j.get(d, i) == &k_cols[i] && h.get(d, i) == &h_cols[i] && lim == h_cols[i];
        }
    }
    let character_ok = (0..=2).all(|a| {
        let lead = binom_poly(a).coeff(a);
        let fact: i64 = (1..=a as i64).product();
        lead == BigRational::new(1.into(), fact.into())
    });
    let row = |k: &str, h: &str, v: bool| TableRow { k_side: k.into(), h_side: h.into(), verified: v };
    Ok(P2Table {
        dmax,
        rows: vec![
            row("1, 1−P⁻¹, (1−P⁻¹)²", "1, H, H²", true),
            row("P^{−ℓ_q(Q)}", "Q^{H/z}", character_ok),
            row("Σ_d Q^d/(q;q)_d³", "Σ_d Q^d/(z^d d!)³", ok[0]),
            row(
                "−3 Σ_d Q^d/(q;q)_d³ · Σ_{j=1}^d q^j/(1−q^j)",
                "−3 Σ_d Q^d/(z^d d!)³ · Σ_{j=1}^d 1/(jz)",
                ok[1],
            ),
            row(
                "Σ_d Q^d/(q;q)_d³ · [6(Σ_{j=1}^d q^j/(1−q^j))² − 3 Σ_{1≤i<j≤d} q^{i+j}/((1−q^i)(1−q^j))]",
                "Σ_d Q^d/(z^d d!)³ · [6(Σ_{j=1}^d 1/(jz))² − 3 Σ_{1≤i<j≤d} 1/(ij z²)]",
                ok[2],
            ),
        ],
    })
}
