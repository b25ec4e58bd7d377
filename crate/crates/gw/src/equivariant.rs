//! Torus-equivariant J-functions of ℙᴺ, evaluated numerically.
//!
//! With `Λ_i = q^{−λ_i/z}` the i-th K-theoretic solution is
//! `f_i(Q) = Λ_i^{−ℓ_q(Q)} Σ_d Q^d / ∏_j (qΛ_jΛ_i⁻¹;q)_d`, annihilated by
//! `∏_j (1 − Λ_j σ) − Q`. Here `Λ_i^{−ℓ_q(Q)} = exp((λ_i/z)·log q·ℓ_q(Q))`.

use num_complex::Complex64 as C;
use qonf_confluence::{limit_solution_along_path, TSchedule};
use qonf_qdiff::Mat;
use qonf_qspecial::{expm1, log_off_spiral, q_log, QValue};
use qonf_rings::par::{map_collect, Exec};
use serde::Serialize;

use crate::error::{GwError, GwResult};

/// Distance below which `(λ_i − λ_j)/z` counts as an integer.
pub const RESONANCE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantSpec {
    pub lambdas: Vec<C>,
    pub z: C,
}

impl EquivariantSpec {
    pub fn new(lambdas: Vec<C>, z: C) -> GwResult<Self> {
        if lambdas.is_empty() {
            return Err(GwError::Input("at least one weight is required".into()));
        }
        if z.norm() == 0.0 {
            return Err(GwError::Input("z must be nonzero".into()));
        }
        let spec = EquivariantSpec { lambdas, z };
        for i in 0..spec.lambdas.len() {
            for j in 0..spec.lambdas.len() {
                if i == j {
                    continue;
                }
                let r = spec.delta(i, j);
                if (r - C::new(r.re.round(), 0.0)).norm() < RESONANCE_TOL {
                    return Err(GwError::Resonance { i, j, ratio: format!("{r}") });
                }
            }
        }
        Ok(spec)
    }

    /// `N` for ℙᴺ.
    pub fn n(&self) -> usize {
        self.lambdas.len() - 1
    }

    /// `(λ_i − λ_j)/z`.
    pub fn delta(&self, i: usize, j: usize) -> C {
        (self.lambdas[i] - self.lambdas[j]) / self.z
    }
}

/// `1 − q^{r + δ}` without cancellation near `q = 1`.
fn one_minus_qpow(h: C, x: C) -> C {
    -expm1(h * x)
}

/// Coefficients of all `N + 1` solutions at a fixed `q`.
#[derive(Clone, Debug)]
pub struct EquivariantJ {
    spec: EquivariantSpec,
    q: QValue,
    /// `coeffs[i][d]`.
    coeffs: Vec<Vec<C>>,
}

/// Build the truncated series `f_i` for `d ≤ dmax`.
pub fn jk_equivariant(spec: &EquivariantSpec, q: &QValue, dmax: usize) -> GwResult<EquivariantJ> {
    jk_equivariant_scaled(spec, q, dmax, C::new(1.0, 0.0))
}

/// Series after the pullback `Q ↦ c·Q` on the power part only.
fn jk_equivariant_scaled(spec: &EquivariantSpec, q: &QValue, dmax: usize, c: C) -> GwResult<EquivariantJ> {
    let h = q.log();
    let n1 = spec.lambdas.len();
    let mut coeffs = Vec::with_capacity(n1);
    for i in 0..n1 {
        let mut row = Vec::with_capacity(dmax + 1);
        let mut t = C::new(1.0, 0.0);
        row.push(t);
        for r in 1..=dmax {
            let mut den = C::new(1.0, 0.0);
            for j in 0..n1 {
                let x = C::new(r as f64, 0.0) + spec.delta(i, j);
                let f = one_minus_qpow(h, x);
                if f.norm() < RESONANCE_TOL * x.norm().max(1.0) * h.norm() {
                    return Err(GwError::Resonance { i, j, ratio: format!("{}", spec.delta(i, j)) });
                }
                den *= f;
            }
            t = t * c / den;
            row.push(t);
        }
        coeffs.push(row);
    }
    Ok(EquivariantJ { spec: spec.clone(), q: *q, coeffs })
}

impl EquivariantJ {
    pub fn dmax(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn coeffs(&self, i: usize) -> &[C] {
        &self.coeffs[i]
    }

    /// `Λ_i^{−ℓ_q(Q)}`.
    pub fn prefactor(&self, i: usize, big_q: C) -> GwResult<C> {
        let l = q_log(&self.q, big_q)?;
        Ok((self.spec.lambdas[i] / self.spec.z * self.q.log() * l).exp())
    }

    pub fn power_part(&self, i: usize, big_q: C) -> C {
        self.coeffs[i].iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * big_q + c)
    }

    pub fn eval(&self, i: usize, big_q: C) -> GwResult<C> {
        Ok(self.prefactor(i, big_q)? * self.power_part(i, big_q))
    }

    /// `|[∏_j(1 − Λ_jσ) − Q] f_i| / Σ |terms|` at `Q`.
    pub fn residual(&self, i: usize, big_q: C) -> GwResult<f64> {
        let h = self.q.log();
        let mut poly = vec![C::new(1.0, 0.0)];
        for lam in &self.spec.lambdas {
            let big_lam = (-h * lam / self.spec.z).exp();
            let mut next = vec![C::new(0.0, 0.0); poly.len() + 1];
            for (k, p) in poly.iter().enumerate() {
                next[k] += p;
                next[k + 1] -= p * big_lam;
            }
            poly = next;
        }
        let qc = self.q.q();
        let mut total = -big_q * self.eval(i, big_q)?;
        let mut scale = total.norm();
        let mut arg = big_q;
        for p in &poly {
            let term = p * self.eval(i, arg)?;
            total += term;
            scale += term.norm();
            arg *= qc;
        }
        Ok(if scale == 0.0 { 0.0 } else { total.norm() / scale })
    }

    /// `det [f_i(q^k Q)]_{k,i}`, `0 ≤ k, i ≤ N`.
    pub fn casoratian(&self, big_q: C) -> GwResult<C> {
        let n1 = self.coeffs.len();
        let qc = self.q.q();
        let mut rows = Vec::with_capacity(n1);
        let mut arg = big_q;
        for _ in 0..n1 {
            rows.push((0..n1).map(|i| self.eval(i, arg)).collect::<GwResult<Vec<_>>>()?);
            arg *= qc;
        }
        Ok(Mat::from_rows(rows)?.det()?)
    }
}

/// `Q^{λ_i/z} Σ_{d≤dmax} Q^d ∏_{r≤d}∏_j 1/(λ_i − λ_j + rz)`, with `log Q`
/// continued off the spiral `−q0^ℝ`.
pub fn equivariant_coh_target(spec: &EquivariantSpec, dmax: usize, big_q: C, q0: C) -> Vec<C> {
    let n1 = spec.lambdas.len();
    let logq = log_off_spiral(big_q, q0);
    (0..n1)
        .map(|i| {
            let mut t = C::new(1.0, 0.0);
            let mut s = t;
            for r in 1..=dmax {
                let den: C = (0..n1).map(|j| spec.lambdas[i] - spec.lambdas[j] + spec.z * r as f64).product();
                t = t * big_q / den;
                s += t;
            }
            (spec.lambdas[i] / spec.z * logq).exp() * s
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchComparison {
    pub i: usize,
    pub limit: (f64, f64),
    pub target: (f64, f64),
    pub rel_error: f64,
    pub observed_order: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivariantComparison {
    pub q: (f64, f64),
    pub branches: Vec<BranchComparison>,
}

impl EquivariantComparison {
    pub fn max_error(&self) -> f64 {
        self.branches.iter().map(|b| b.rel_error).fold(0.0, f64::max)
    }
}

/// Limit along `q = q0^t` of `Λ_i^{−ℓ_q(Q)} Σ_d (((1−q)/z)^{N+1} Q)^d / ∏_j(qΛ_jΛ_i⁻¹;q)_d`
/// against [`equivariant_coh_target`].
pub fn equivariant_confluence_compare(
    spec: &EquivariantSpec,
    dmax: usize,
    big_q: C,
    q0: C,
    schedule: &TSchedule,
    exec: Exec,
) -> GwResult<EquivariantComparison> {
    let n1 = spec.lambdas.len();
    let target = equivariant_coh_target(spec, dmax, big_q, q0);
    let branches = map_collect(exec, (0..n1).collect(), |i| -> GwResult<BranchComparison> {
        let f = |q: &QValue| {
            let c = (one_minus_qpow(q.log(), C::new(1.0, 0.0)) / spec.z).powu(n1 as u32);
            let j = jk_equivariant_scaled(spec, q, dmax, c).map_err(to_confluence)?;
            j.eval(i, big_q).map_err(to_confluence)
        };
        let lim = limit_solution_along_path(f, q0, big_q, &[C::new(-1.0, 0.0)], schedule, Exec::Sequential)?;
        let rel_error = (lim.value - target[i]).norm() / target[i].norm().max(1.0);
        Ok(BranchComparison {
            i,
            limit: (lim.value.re, lim.value.im),
            target: (target[i].re, target[i].im),
            rel_error,
            observed_order: lim.observed_order,
        })
    });
    Ok(EquivariantComparison { q: (big_q.re, big_q.im), branches: branches.into_iter().collect::<GwResult<_>>()? })
}

fn to_confluence(e: GwError) -> qonf_confluence::ConfluenceError {
    match e {
        GwError::Confluence(c) => c,
        GwError::Special(s) => s.into(),
        other => qonf_confluence::ConfluenceError::Input(other.to_string()),
    }
}
