//! The rank-one example `σf = (1 + (q − 1)Q / ((Q − 1)(Q − i)(Q + 1))) f`.
//!
//! Writing the coefficient as `∏(1 − α_jQ)/∏(1 − β_jQ)` with `β = (1, −i, −1)`,
//! the roots `1/α_j` of `P_q(Q) = (q − 1)Q + (Q − 1)(Q − i)(Q + 1)` satisfy
//! `α_j = β_j q^{μ_j} + O((q − 1)²)`, `μ = ((1 + i)/4, −1/2, (1 − i)/4)`.

use num_complex::Complex64 as C;
use qonf_qdiff::{rank1_product_solution, Rank1Product};
use qonf_qspecial::{log_off_spiral, QValue};
use qonf_rings::par::Exec;

use crate::delta::poly_roots;
use crate::error::{ConfluenceError, ConfluenceResult};
use crate::path::{limit_solution_along_path, log_one_minus_along_spiral, PathLimit, TSchedule};
use crate::roots::{gaussian, root_taylor, BivariatePoly, GaussianRational};

pub const MONODROMY_POLY: &str = "(q-1)*Q + (Q-1)*(Q-i)*(Q+1)";

/// Singular points `1, i, −1` of the limit equation.
pub fn singularities() -> [GaussianRational; 3] {
    [gaussian((1, 1), (0, 1)), gaussian((0, 1), (1, 1)), gaussian((-1, 1), (0, 1))]
}

fn sing_c64() -> [C; 3] {
    [C::new(1.0, 0.0), C::new(0.0, 1.0), C::new(-1.0, 0.0)]
}

pub fn monodromy_poly() -> BivariatePoly {
    BivariatePoly::parse(MONODROMY_POLY).expect("fixed polynomial")
}

/// Exact `μ_j = −r1/r0` from the root Taylor data at each singularity.
pub fn monodromy_exponents() -> ConfluenceResult<[GaussianRational; 3]> {
    let p = monodromy_poly();
    let [a, b, c] = singularities();
    let mu = |r0: &GaussianRational| -> ConfluenceResult<GaussianRational> { Ok(-root_taylor(&p, r0)?.exponent()) };
    Ok([mu(&a)?, mu(&b)?, mu(&c)?])
}

/// Solutions at 0 and ∞ for one numeric `q`.
#[derive(Clone, Debug)]
pub struct MonodromyExample {
    pub q: QValue,
    /// `α_j`, ordered to match `β = (1, −i, −1)`.
    pub alpha: [C; 3],
    pub at_zero: Rank1Product,
    /// Solution at ∞ as a function of `W = 1/Q`.
    pub at_infinity: Rank1Product,
}

impl MonodromyExample {
    pub fn new(q: &QValue) -> ConfluenceResult<Self> {
        let i = C::new(0.0, 1.0);
        let roots = poly_roots(&[i, q.q() - 2.0, -i, C::new(1.0, 0.0)]);
        let mut alpha = [C::new(0.0, 0.0); 3];
        for (k, s) in sing_c64().iter().enumerate() {
            let r = roots
                .iter()
                .min_by(|a, b| (*a - s).norm().total_cmp(&(*b - s).norm()))
                .ok_or_else(|| ConfluenceError::Input("no roots".into()))?;
            alpha[k] = r.inv();
        }
        let beta: Vec<C> = sing_c64().iter().map(|s| s.inv()).collect();
        let qq = q.q();
        let at_zero = rank1_product_solution(C::new(1.0, 0.0), alpha.to_vec(), beta.clone(), *q)?;
        let at_infinity = rank1_product_solution(
            C::new(1.0, 0.0),
            beta.iter().map(|b| qq / b).collect(),
            alpha.iter().map(|a| qq / a).collect(),
            *q,
        )?;
        Ok(MonodromyExample { q: *q, alpha, at_zero, at_infinity })
    }

    /// `P(Q) = f_0(Q) / f_∞(1/Q)`.
    pub fn birkhoff(&self, big_q: C) -> ConfluenceResult<C> {
        Ok(self.at_zero.eval(big_q)? / self.at_infinity.eval(big_q.inv())?)
    }
}

fn mu_c64() -> ConfluenceResult<[C; 3]> {
    let m = monodromy_exponents()?;
    Ok([crate::roots::gaussian_to_c64(&m[0]), crate::roots::gaussian_to_c64(&m[1]), crate::roots::gaussian_to_c64(&m[2])])
}

/// `lim P(Q)` along `q = q0^t`; `Q` must avoid `±q0^ℝ` and `i·q0^ℝ`.
pub fn birkhoff_limit(big_q: C, q0: C, schedule: &TSchedule, exec: Exec) -> ConfluenceResult<PathLimit<C>> {
    let excluded = sing_c64();
    limit_solution_along_path(|q| MonodromyExample::new(q)?.birkhoff(big_q), q0, big_q, &excluded, schedule, exec)
}

/// `lim f_0(Q)` along `q = q0^t`.
pub fn solution_limit(big_q: C, q0: C, schedule: &TSchedule, exec: Exec) -> ConfluenceResult<PathLimit<C>> {
    let excluded = sing_c64().map(|s| s.inv());
    limit_solution_along_path(|q| Ok(MonodromyExample::new(q)?.at_zero.eval(big_q)?), q0, big_q, &excluded, schedule, exec)
}

/// `(−Q)^{μ1} (iQ)^{μ2} Q^{μ3}`, each power taken off the spiral `−q0^ℝ`.
pub fn birkhoff_limit_formula(big_q: C, q0: C) -> ConfluenceResult<C> {
    let mu = mu_c64()?;
    let i = C::new(0.0, 1.0);
    let l = |x: C| log_off_spiral(x, q0);
    Ok((mu[0] * l(-big_q) + mu[1] * l(i * big_q) + mu[2] * l(big_q)).exp())
}

/// `∏ (1 − β_jQ)^{μ_j}`, each logarithm continued along the q-spiral.
pub fn solution_limit_formula(big_q: C, q0: C) -> ConfluenceResult<C> {
    let mu = mu_c64()?;
    let mut acc = C::new(0.0, 0.0);
    for (m, s) in mu.iter().zip(sing_c64()) {
        acc += m * log_one_minus_along_spiral(big_q / s, q0)?;
    }
    Ok(acc.exp())
}

/// Smallest relative distance from `value` to any branch of
/// `∏ x_j^{μ_j}` (principal logs times `e^{2πi k_j μ_j}`, `|k_j| ≤ kmax`).
pub fn branch_distance(value: C, args: [C; 3], mu: [C; 3], kmax: i32) -> f64 {
    let base: C = args.iter().zip(&mu).map(|(x, m)| m * x.ln()).sum::<C>().exp();
    let two_pi_i = C::new(0.0, 2.0 * std::f64::consts::PI);
    let mut best = f64::INFINITY;
    for k0 in -kmax..=kmax {
        for k1 in -kmax..=kmax {
            for k2 in -kmax..=kmax {
                let f = (two_pi_i * (mu[0] * k0 as f64 + mu[1] * k1 as f64 + mu[2] * k2 as f64)).exp();
                best = best.min((base * f - value).norm() / value.norm());
            }
        }
    }
    best
}
