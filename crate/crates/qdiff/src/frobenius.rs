//! Numeric fundamental solutions at `Q = 0`.
//!
//! `X(Q) = G(Q)·B⁻¹·diag(e_{q,λ_i}(Q))·exp(ℓ_q(Q)·N)·B`, with `G = F⁻¹` from
//! [`QDifferenceSystem::normalize_to_constant`]. Exactly one of the diagonal
//! part and `N` is nontrivial.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qonf_qspecial::{log_q_character, q_log_with_tol, QValue, POLE_TOL};

use crate::error::{QDiffError, QDiffResult};
use crate::mat::{max_norm, Mat};
use crate::matseries::MatSeries;
use crate::system::QDifferenceSystem;

/// Relative tolerance for eigenvalue clustering.
pub const EIGEN_CLUSTER_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub enum Exponents {
    /// `A0 = B⁻¹ diag(λ) B`.
    Semisimple { lambdas: Vec<Complex64>, b: Mat<Complex64>, binv: Mat<Complex64> },
    /// `A0 = exp(N)`, `N` nilpotent.
    Unipotent { n: Mat<Complex64> },
}

#[derive(Clone, Debug)]
pub struct FundamentalSolutionAt0 {
    pub gauge: MatSeries<Complex64>,
    pub a0: Mat<Complex64>,
    pub exponents: Exponents,
    q: QValue,
}

fn to_dmatrix(m: &Mat<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn from_dmatrix(m: &DMatrix<Complex64>) -> Mat<Complex64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn close(a: Complex64, b: Complex64, scale: f64) -> bool {
    (a - b).norm() <= EIGEN_CLUSTER_TOL * scale.max(1e-300)
}

/// Eigenvalues and a right-eigenvector matrix `V` (`A V = V diag λ`) via Schur form.
pub fn eigen_decomposition(a: &Mat<Complex64>) -> (Vec<Complex64>, Mat<Complex64>) {
    let n = a.rows();
    let (u, t) = to_dmatrix(a).schur().unpack();
    let lambdas: Vec<Complex64> = (0..n).map(|k| t[(k, k)]).collect();
    let mut v = DMatrix::<Complex64>::zeros(n, n);
    for k in 0..n {
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        y[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let s: Complex64 = ((i + 1)..=k).map(|l| t[(i, l)] * y[l]).sum();
            y[i] = -s / (t[(i, i)] - t[(k, k)]);
        }
        let col = &u * DMatrix::from_column_slice(n, 1, &y);
        let norm = col.norm();
        for i in 0..n {
            v[(i, k)] = col[(i, 0)] / norm;
        }
    }
    (lambdas, from_dmatrix(&v))
}

/// `log(I + M) = Σ_{k≥1} (−1)^{k+1} M^k / k` for nilpotent `M`.
pub fn log_unipotent(a0: &Mat<Complex64>) -> Mat<Complex64> {
    let n = a0.rows();
    let m = a0.sub(&Mat::identity(n));
    let mut acc = Mat::zeros(n, n);
    let mut pw = Mat::identity(n);
    for k in 1..=n {
        pw = pw.mul(&m);
        let c = if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
        acc = acc.add(&pw.scale(&Complex64::new(c, 0.0)));
    }
    acc
}

/// `exp(x·N)` for nilpotent `N`.
pub fn exp_nilpotent(n_mat: &Mat<Complex64>, x: Complex64) -> Mat<Complex64> {
    let n = n_mat.rows();
    let mut acc = Mat::identity(n);
    let mut term = Mat::identity(n);
    for k in 1..n {
        term = term.mul(n_mat).scale(&(x / k as f64));
        acc = acc.add(&term);
    }
    acc
}

/// Classify `A(0)` and build the fundamental solution to order `D`.
pub fn frobenius_solution(sys: &QDifferenceSystem<Complex64>, d: usize) -> QDiffResult<FundamentalSolutionAt0> {
    let q = QValue::new(*sys.q())?;
    let norm = sys.normalize_to_constant(d)?;
    let a0 = norm.a0.clone();
    let n = a0.rows();
    let scale = max_norm(&a0);
    // A single eigenvalue 1 is detected through nilpotency of A0 − I: roundoff
    // splits an n-fold eigenvalue by ~ε^{1/n}, far beyond the cluster tolerance.
    let m = a0.sub(&Mat::identity(n));
    let mut pw = Mat::identity(n);
    for _ in 0..n {
        pw = pw.mul(&m);
    }
    let unipotent = max_norm(&pw) <= EIGEN_CLUSTER_TOL * (1.0 + scale).powi(n as i32);
    let (lambdas, v) = eigen_decomposition(&a0);
    let exponents = if unipotent {
        Exponents::Unipotent { n: log_unipotent(&a0) }
    } else {
        let distinct = (0..n).all(|i| (0..i).all(|j| !close(lambdas[i], lambdas[j], scale)));
        let (b, binv) = if distinct {
            (v.inverse()?, v)
        } else {
            let l0 = lambdas[0];
            let scalar = a0.sub(&Mat::identity(n).scale(&l0));
            if max_norm(&scalar) > EIGEN_CLUSTER_TOL * scale {
                return Err(QDiffError::UnsupportedJordan(
                    "repeated eigenvalues other than a scalar matrix or the unipotent case".into(),
                ));
            }
            (Mat::identity(n), Mat::identity(n))
        };
        for i in 0..n {
            for j in 0..n {
                if i == j || close(lambdas[i], lambdas[j], scale) {
                    continue;
                }
                let r = lambdas[i] / lambdas[j];
                for k in 1..=d as i32 {
                    for e in [k, -k] {
                        let qk = q.pow(e as f64);
                        if (r - qk).norm() <= EIGEN_CLUSTER_TOL * qk.norm() {
                            return Err(QDiffError::Resonance { degree: k as usize });
                        }
                    }
                }
            }
        }
        Exponents::Semisimple { lambdas, b, binv }
    };
    Ok(FundamentalSolutionAt0 { gauge: norm.gauge.clone(), a0, exponents, q })
}

impl FundamentalSolutionAt0 {
    pub fn dim(&self) -> usize {
        self.a0.rows()
    }

    pub fn q(&self) -> &QValue {
        &self.q
    }

    /// Solution of the constant system `σX0 = A0 X0`.
    pub fn eval_constant_part(&self, big_q: Complex64) -> QDiffResult<Mat<Complex64>> {
        match &self.exponents {
            Exponents::Semisimple { lambdas, b, binv } => {
                let n = lambdas.len();
                let mut diag = Mat::zeros(n, n);
                for (i, l) in lambdas.iter().enumerate() {
                    diag[(i, i)] = log_q_character(*l, &self.q, big_q, POLE_TOL)?.exp();
                }
                Ok(binv.mul(&diag).mul(b))
            }
            Exponents::Unipotent { n } => Ok(exp_nilpotent(n, q_log_with_tol(&self.q, big_q, POLE_TOL)?)),
        }
    }

    pub fn eval(&self, big_q: Complex64) -> QDiffResult<Mat<Complex64>> {
        Ok(self.gauge.eval(big_q).mul(&self.eval_constant_part(big_q)?))
    }

    /// `max |σX − A·X| / max |X|` at `Q`.
    pub fn shift_residual(&self, sys: &QDifferenceSystem<Complex64>, big_q: Complex64) -> QDiffResult<f64> {
        let x = self.eval(big_q)?;
        let xs = self.eval(big_q * self.q.q())?;
        let ax = sys.eval(big_q)?.mul(&x);
        Ok(max_norm(&xs.sub(&ax)) / max_norm(&x))
    }

    /// `det X(Q)`.
    pub fn casoratian(&self, big_q: Complex64) -> QDiffResult<Complex64> {
        self.eval(big_q)?.det()
    }
}
