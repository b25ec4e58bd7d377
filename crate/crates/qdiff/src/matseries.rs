//! Truncated power series in `Q` with square matrix coefficients.

use num_complex::Complex64;
use qonf_rings::Scalar;

use crate::error::{QDiffError, QDiffResult};
use crate::field::Field;
use crate::mat::Mat;

/// `Σ_{m≤D} M_m Q^m`; all coefficients share one shape.
#[derive(Clone, Debug, PartialEq)]
pub struct MatSeries<S: Scalar + Field> {
    coeffs: Vec<Mat<S>>,
}

impl<S: Scalar + Field> MatSeries<S> {
    pub fn new(coeffs: Vec<Mat<S>>) -> Self {
        assert!(!coeffs.is_empty(), "at least the constant term");
        MatSeries { coeffs }
    }

    pub fn identity(n: usize, truncation: usize) -> Self {
        let mut c = vec![Mat::zeros(n, n); truncation + 1];
        c[0] = Mat::identity(n);
        MatSeries { coeffs: c }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn coeff(&self, m: usize) -> &Mat<S> {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[Mat<S>] {
        &self.coeffs
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.truncation().min(o.truncation());
        let n = self.dim();
        let coeffs = (0..=d)
            .map(|m| (0..=m).fold(Mat::zeros(n, n), |acc, k| acc.add(&self.coeffs[k].mul(&o.coeffs[m - k]))))
            .collect();
        MatSeries { coeffs }
    }

    /// Requires an invertible constant term.
    pub fn inverse(&self) -> QDiffResult<Self> {
        let inv0 = self.coeffs[0].inverse()?;
        let n = self.dim();
        let mut out: Vec<Mat<S>> = vec![inv0.clone()];
        for m in 1..=self.truncation() {
            let s = (1..=m).fold(Mat::zeros(n, n), |acc, k| acc.add(&self.coeffs[k].mul(&out[m - k])));
            out.push(inv0.mul(&s).scale(&S::from_i64(-1)));
        }
        Ok(MatSeries { coeffs: out })
    }

    /// `Q ↦ c·Q`.
    pub fn scale_var(&self, c: &S) -> Self {
        let mut pw = S::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|m| {
                let r = m.scale(&pw);
                pw = pw.mul_ref(c);
                r
            })
            .collect();
        MatSeries { coeffs }
    }

    pub fn truncate(&self, d: usize) -> Self {
        MatSeries { coeffs: self.coeffs.iter().take(d + 1).cloned().collect() }
    }

    pub fn map<T: Scalar + Field>(&self, f: impl Fn(&S) -> T) -> MatSeries<T> {
        MatSeries { coeffs: self.coeffs.iter().map(|m| m.map(&f)).collect() }
    }

    pub fn entry_series(&self, i: usize, j: usize) -> Vec<S> {
        self.coeffs.iter().map(|m| m[(i, j)].clone()).collect()
    }
}

impl MatSeries<Complex64> {
    /// Horner evaluation of the truncated sum.
    pub fn eval(&self, big_q: Complex64) -> Mat<Complex64> {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for m in self.coeffs.iter().rev().skip(1) {
            acc = acc.scale(&big_q).add(m);
        }
        acc
    }

    /// Bound on the first omitted term from the last stored coefficient.
    pub fn tail_estimate(&self, big_q: Complex64) -> f64 {
        crate::mat::max_norm(self.coeffs.last().expect("nonempty")) * big_q.norm().powi(self.coeffs.len() as i32)
    }
}

pub(crate) fn check_shape<F: Field>(a: &Mat<F>, n: usize) -> QDiffResult<()> {
    if a.rows() != n || a.cols() != n {
        Err(QDiffError::Dimension(format!("expected {n}x{n}, got {}x{}", a.rows(), a.cols())))
    } else {
        Ok(())
    }
}
