//! Rank-one product solutions and Birkhoff connection matrices.

use num_complex::Complex64;
use qonf_qspecial::{log_q_character, log_qpoch_infinite, pole_proximity, QValue, POLE_TOL};

use crate::error::{QDiffError, QDiffResult};
use crate::mat::{max_norm, Mat};

/// `e_{q,λ}(Q)·∏(β_i Q;q)_∞ / ∏(α_i Q;q)_∞`, solving
/// `σf = λ ∏(1 − α_i Q) / ∏(1 − β_i Q) · f`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rank1Product {
    pub lambda: Complex64,
    pub alpha: Vec<Complex64>,
    pub beta: Vec<Complex64>,
    pub q: QValue,
}

/// `(x;q)_∞ = 0` exactly on `x ∈ q^{−ℕ}`.
fn qpoch_zero(q: &QValue, x: Complex64) -> bool {
    let (k, rel) = pole_proximity(q, -x);
    k <= 0 && rel < POLE_TOL
}

pub fn rank1_product_solution(lambda: Complex64, alpha: Vec<Complex64>, beta: Vec<Complex64>, q: QValue) -> QDiffResult<Rank1Product> {
    if lambda.norm() == 0.0 || alpha.iter().chain(&beta).any(|x| x.norm() == 0.0) {
        return Err(QDiffError::Input("rank-one parameters must be nonzero".into()));
    }
    Ok(Rank1Product { lambda, alpha, beta, q })
}

impl Rank1Product {
    pub fn log_eval(&self, big_q: Complex64) -> QDiffResult<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = if (self.lambda - one).norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            log_q_character(self.lambda, &self.q, big_q, POLE_TOL)?
        };
        for a in &self.alpha {
            let x = a * big_q;
            if qpoch_zero(&self.q, x) {
                return Err(QDiffError::Pole(format!("(αQ;q)_∞ vanishes at Q = {big_q}")));
            }
            acc -= log_qpoch_infinite(x, &self.q);
        }
        for b in &self.beta {
            acc += log_qpoch_infinite(b * big_q, &self.q);
        }
        Ok(acc)
    }

    pub fn eval(&self, big_q: Complex64) -> QDiffResult<Complex64> {
        self.log_eval(big_q).map(|z| z.exp())
    }

    /// `λ ∏(1 − α_i Q) / ∏(1 − β_i Q)`.
    pub fn coefficient(&self, big_q: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let num: Complex64 = self.alpha.iter().map(|a| one - a * big_q).product();
        let den: Complex64 = self.beta.iter().map(|b| one - b * big_q).product();
        self.lambda * num / den
    }

    /// `|f(qQ) − c(Q) f(Q)| / |f(qQ)|`.
    pub fn shift_residual(&self, big_q: Complex64) -> QDiffResult<f64> {
        let f = self.eval(big_q)?;
        let fs = self.eval(big_q * self.q.q())?;
        Ok((fs - self.coefficient(big_q) * f).norm() / fs.norm())
    }
}

/// `P(Q) = X0(Q)·X∞(1/Q)⁻¹`.
pub fn birkhoff_matrix(
    x0: impl Fn(Complex64) -> QDiffResult<Mat<Complex64>>,
    xinf: impl Fn(Complex64) -> QDiffResult<Mat<Complex64>>,
    big_q: Complex64,
) -> QDiffResult<Mat<Complex64>> {
    let a = x0(big_q)?;
    let b = xinf(big_q.inv())?;
    Ok(a.mul(&b.inverse()?))
}

/// `max |P(qQ) − P(Q)| / max |P(Q)|`.
pub fn q_constancy_defect(
    x0: impl Fn(Complex64) -> QDiffResult<Mat<Complex64>>,
    xinf: impl Fn(Complex64) -> QDiffResult<Mat<Complex64>>,
    q: Complex64,
    big_q: Complex64,
) -> QDiffResult<f64> {
    let p = birkhoff_matrix(&x0, &xinf, big_q)?;
    let ps = birkhoff_matrix(&x0, &xinf, big_q * q)?;
    Ok(max_norm(&ps.sub(&p)) / max_norm(&p))
}

/// Scalar evaluator as a 1×1 matrix.
pub fn as_matrix(f: impl Fn(Complex64) -> QDiffResult<Complex64>) -> impl Fn(Complex64) -> QDiffResult<Mat<Complex64>> {
    move |z| {
        let v = f(z)?;
        Ok(Mat::from_fn(1, 1, |_, _| v))
    }
}
