//! The deformation parameter, paths `q0^t`, spirals and the spiral-adapted logarithm.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::{SpecialError, SpecialResult};

/// A complex `q` with `0 < |q| < 1`, stored with its principal logarithm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QValue {
    q: Complex64,
    h: Complex64,
}

impl QValue {
    pub fn new(q: Complex64) -> SpecialResult<Self> {
        let r = q.norm();
        if !(r > 0.0 && r < 1.0) || !q.re.is_finite() || !q.im.is_finite() {
            return Err(SpecialError::InvalidQ(q));
        }
        Ok(QValue { q, h: q.ln() })
    }

    pub fn real(q: f64) -> SpecialResult<Self> {
        Self::new(Complex64::new(q, 0.0))
    }

    /// Build from a logarithm `h` with `Re h < 0`; `q = e^h`.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn from_log(h: Complex64) -> SpecialResult<Self> {
        if !(h.re < 0.0) {
            return Err(SpecialError::InvalidQ(h.exp()));
        }
        Ok(QValue { q: h.exp(), h })
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// The logarithm used for all powers `q^x = e^{x h}`.
    pub fn log(&self) -> Complex64 {
        self.h
    }

    /// `q^x` along the stored logarithm.
    pub fn pow(&self, x: f64) -> Complex64 {
        (self.h * x).exp()
    }

    pub fn powc(&self, x: Complex64) -> Complex64 {
        (self.h * x).exp()
    }

    /// `1 − q^k` without cancellation for `q` near 1.
    pub fn one_minus_pow(&self, k: f64) -> Complex64 {
        -expm1(self.h * k)
    }
}

/// `e^z − 1` accurate for small `|z|`.
pub fn expm1(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let half = z * 0.5;
        half.exp() * half.sinh() * 2.0
    } else {
        z.exp() - 1.0
    }
}

/// `q(t) = q0^t` along the principal logarithm of `q0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QPath {
    pub q0: QValue,
    pub t: f64,
}

impl QPath {
    pub fn new(q0: Complex64, t: f64) -> SpecialResult<Self> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(SpecialError::InvalidT(t));
        }
        Ok(QPath { q0: QValue::new(q0)?, t })
    }

    pub fn q(&self) -> QValue {
        QValue { q: (self.q0.h * self.t).exp(), h: self.q0.h * self.t }
    }
}

/// Reduce an angle to `(−π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Real `s` with `|Q/ν| = |q0|^s`.
pub fn spiral_parameter(nu: Complex64, q0: Complex64, big_q: Complex64) -> f64 {
    (big_q / nu).norm().ln() / q0.norm().ln()
}

/// True iff `Q = ν·q0^s` for some real `s`, up to an angular residual `tol`.
pub fn spiral_contains(nu: Complex64, q0: Complex64, big_q: Complex64, tol: f64) -> bool {
    spiral_residual(nu, q0, big_q) < tol
}

/// Angular distance of `Q` from the continuous spiral `ν·q0^ℝ`.
pub fn spiral_residual(nu: Complex64, q0: Complex64, big_q: Complex64) -> f64 {
    let s = spiral_parameter(nu, q0, big_q);
    let z = big_q / nu;
    wrap_angle(z.arg() - s * q0.arg()).abs()
}

/// Logarithm on `ℂ ∖ (−q0^ℝ)`: continuous off the spiral `−q0^ℝ`, equal to the
/// principal logarithm when `q0` is real.
pub fn log_off_spiral(big_q: Complex64, q0: Complex64) -> Complex64 {
    let s = big_q.norm().ln() / q0.norm().ln();
    let phase = s * q0.arg();
    let rotated = big_q * Complex64::from_polar(1.0, -phase);
    Complex64::new(big_q.norm().ln(), phase + rotated.arg())
}

/// `Q^μ` on the branch of [`log_off_spiral`].
pub fn pow_off_spiral(big_q: Complex64, mu: Complex64, q0: Complex64) -> Complex64 {
    (mu * log_off_spiral(big_q, q0)).exp()
}
