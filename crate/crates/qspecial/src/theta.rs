//! Jacobi theta `θ_q(Q) = Σ_{d∈ℤ} q^{d(d−1)/2} Q^d`, q-characters and the q-logarithm.
//!
//! Everything is computed as a logarithm. The defining series is summed over a
//! window centred at its largest term. Its modular form (Poisson summation in
//! `d`) has few significant terms for every `q` on a path `q0^t`, `t → 0`:
//!
//! `θ = e^{−h c²/2} √(2π/−h) Σ_k e^{2π²k²/h − 2πikc}`, `h = log q`,
//! `c = 1/2 − log Q / h`.
//!
//! For `1/2 < |q| ≤ 0.99` both are summed and the one with less cancellation
//! (larger `|θ|` relative to its largest term) is returned.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{SpecialError, SpecialResult};
use crate::logsum::LogSum;
use crate::pochhammer::qpoch_infinite;
use crate::qvalue::QValue;

/// Default relative tolerance for pole proximity.
pub const POLE_TOL: f64 = 1e-8;

/// Below this `|q|` only the defining series is summed.
const DIRECT_ONLY: f64 = 0.5;
/// Above this `|q|` only the modular form is summed.
const MODULAR_ONLY: f64 = 0.99;

/// Logarithmic data of one theta evaluation.
#[derive(Clone, Copy, Debug)]
pub struct ThetaEval {
    /// A logarithm of `θ_q(Q)`.
    pub log_value: Complex64,
    /// `log` of the largest term magnitude in the summed representation.
    pub log_scale: f64,
    /// `−Q θ'(Q) / θ(Q)`.
    pub q_log: Complex64,
}

impl ThetaEval {
    pub fn value(&self) -> Complex64 {
        self.log_value.exp()
    }

    /// `|θ|` relative to the largest summed term.
    pub fn relative_magnitude(&self) -> f64 {
        (self.log_value.re - self.log_scale).exp()
    }
}

/// Window walk: expand around `centre` until both edge terms fall below `cutoff`.
fn window_sum(centre: i64, cutoff: f64, exponent: impl Fn(i64) -> Complex64, weight: impl Fn(i64) -> Complex64) -> (LogSum, f64) {
    let mut top = exponent(centre).re;
    for k in [centre - 1, centre + 1] {
        top = top.max(exponent(k).re);
    }
    let mut sum = LogSum::new(top);
    sum.push(exponent(centre), weight(centre));
    let mut j = 1;
    loop {
        let lo = exponent(centre - j);
        let hi = exponent(centre + j);
        sum.push(lo, weight(centre - j));
        sum.push(hi, weight(centre + j));
        if lo.re - top < cutoff && hi.re - top < cutoff {
            break;
        }
        j += 1;
    }
    (sum, top)
}

fn theta_direct(q: &QValue, w: Complex64, tol: f64) -> ThetaEval {
    let h = q.log();
    let exponent = |d: i64| {
        let d = d as f64;
        h * (d * (d - 1.0) / 2.0) + w * d
    };
    let centre = (0.5 - w.re / h.re).round() as i64;
    let (sum, top) = window_sum(centre, tol.ln() - 20.0, exponent, |d| Complex64::new(d as f64, 0.0));
    ThetaEval { log_value: sum.log(), log_scale: top, q_log: -sum.weighted_mean() }
}

fn theta_modular(q: &QValue, w: Complex64, tol: f64) -> ThetaEval {
    let h = q.log();
    let c = 0.5 - w / h;
    let inv_h = 1.0 / h;
    let exponent = |k: i64| {
        let k = k as f64;
        inv_h * (2.0 * PI * PI * k * k) - Complex64::new(0.0, 2.0 * PI * k) * c
    };
    let centre = (-c.im / (2.0 * PI * inv_h.re)).round() as i64;
    let (sum, top) = window_sum(centre, tol.ln() - 20.0, exponent, |k| Complex64::new(0.0, -2.0 * PI * k as f64));
    let prefactor = -h * c * c * 0.5 + 0.5 * (Complex64::new(2.0 * PI, 0.0) / -h).ln();
    ThetaEval {
        log_value: prefactor + sum.log(),
        log_scale: prefactor.re + top,
        q_log: -c + sum.weighted_mean() * inv_h,
    }
}

/// Evaluate `log θ_q(Q)` and `ℓ_q(Q)` together.
pub fn theta_eval(q: &QValue, big_q: Complex64, tol: f64) -> SpecialResult<ThetaEval> {
    if big_q.norm() == 0.0 || !big_q.re.is_finite() || !big_q.im.is_finite() {
        return Err(SpecialError::Domain("theta is undefined at Q = 0".into()));
    }
    let w = big_q.ln();
    let r = q.q().norm();
    Ok(if r <= DIRECT_ONLY {
        theta_direct(q, w, tol)
    } else if r > MODULAR_ONLY {
        theta_modular(q, w, tol)
    } else {
        let a = theta_direct(q, w, tol);
        let b = theta_modular(q, w, tol);
        if a.log_value.re - a.log_scale >= b.log_value.re - b.log_scale {
            a
        } else {
            b
        }
    })
}

/// Evaluate with the modular form regardless of `|q|`.
pub fn theta_eval_modular(q: &QValue, big_q: Complex64, tol: f64) -> SpecialResult<ThetaEval> {
    if big_q.norm() == 0.0 {
        return Err(SpecialError::Domain("theta is undefined at Q = 0".into()));
    }
    Ok(theta_modular(q, big_q.ln(), tol))
}

/// Evaluate with the defining series regardless of `|q|`.
pub fn theta_eval_direct(q: &QValue, big_q: Complex64, tol: f64) -> SpecialResult<ThetaEval> {
    if big_q.norm() == 0.0 {
        return Err(SpecialError::Domain("theta is undefined at Q = 0".into()));
    }
    Ok(theta_direct(q, big_q.ln(), tol))
}

pub fn theta(q: &QValue, big_q: Complex64, tol: f64) -> SpecialResult<Complex64> {
    theta_eval(q, big_q, tol).map(|e| e.value())
}

pub fn log_theta(q: &QValue, big_q: Complex64, tol: f64) -> SpecialResult<Complex64> {
    theta_eval(q, big_q, tol).map(|e| e.log_value)
}

/// Nearest point of `−q^ℤ` to `x`: `(k, |x + q^k| / |q^k|)`.
pub fn pole_proximity(q: &QValue, x: Complex64) -> (i64, f64) {
    let h = q.log();
    let k0 = (x.norm().ln() / h.re).round() as i64;
    (k0 - 1..=k0 + 1)
        .map(|k| {
            let qk = (h * k as f64).exp();
            (k, (x + qk).norm() / qk.norm())
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty range")
}

fn check_pole(q: &QValue, x: Complex64, tol: f64) -> SpecialResult<()> {
    let (k, rel) = pole_proximity(q, x);
    if rel < tol {
        Err(SpecialError::Pole { arg: x, k })
    } else {
        Ok(())
    }
}

/// `ℓ_q(Q) = −Q θ'_q(Q) / θ_q(Q)`; satisfies `ℓ_q(qQ) = ℓ_q(Q) + 1`.
pub fn q_log(q: &QValue, big_q: Complex64) -> SpecialResult<Complex64> {
    q_log_with_tol(q, big_q, POLE_TOL)
}

pub fn q_log_with_tol(q: &QValue, big_q: Complex64, pole_tol: f64) -> SpecialResult<Complex64> {
    check_pole(q, big_q, pole_tol)?;
    Ok(theta_eval(q, big_q, 1e-16)?.q_log)
}

/// `log e_{q,λ}(Q) = log θ_q(Q) − log θ_q(λQ)` (any branch).
pub fn log_q_character(lambda: Complex64, q: &QValue, big_q: Complex64, pole_tol: f64) -> SpecialResult<Complex64> {
    if lambda.norm() == 0.0 {
        return Err(SpecialError::Domain("q-character needs lambda != 0".into()));
    }
    check_pole(q, lambda * big_q, pole_tol)?;
    let num = theta_eval(q, big_q, 1e-16)?;
    let den = theta_eval(q, lambda * big_q, 1e-16)?;
    Ok(num.log_value - den.log_value)
}

/// `e_{q,λ}(Q) = θ_q(Q) / θ_q(λQ)`; satisfies `e(qQ) = λ e(Q)`.
pub fn q_character(lambda: Complex64, q: &QValue, big_q: Complex64) -> SpecialResult<Complex64> {
    log_q_character(lambda, q, big_q, POLE_TOL).map(|l| l.exp())
}

/// Relative difference between `θ_q(Q)` and `(q;q)_∞(−Q;q)_∞(−q/Q;q)_∞`.
///
/// Zero when `Q` lies on `−q^ℤ`, where both sides vanish.
pub fn jacobi_triple_product_check(q: &QValue, big_q: Complex64, tol: f64) -> SpecialResult<f64> {
    if big_q.norm() == 0.0 {
        return Err(SpecialError::Domain("triple product needs Q != 0".into()));
    }
    if pole_proximity(q, big_q).1 < 1e-12 {
        return Ok(0.0);
    }
    let lhs = theta(q, big_q, tol)?;
    let qq = q.q();
    let rhs = qpoch_infinite(qq, q, tol) * qpoch_infinite(-big_q, q, tol) * qpoch_infinite(-qq / big_q, q, tol);
    Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()))
}
