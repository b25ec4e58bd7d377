//! δ-forms `B = (A − I)/(q − 1)`, q-pullbacks and δ-companion systems.

use num_complex::Complex64;
use qonf_qdiff::{eigen_decomposition, Field, Mat, QDifferenceSystem, QRational, ScalarQOperator, ToComplex};
use qonf_rings::Scalar;

use crate::error::{ConfluenceError, ConfluenceResult};

/// `B(Q)` with `A = I + (q−1)B`.
#[derive(Clone, Debug)]
pub struct DeltaForm<S: Scalar + Field> {
    b: Mat<QRational<S>>,
    q: S,
}

/// A pole of `B` in `Q`, with the largest multiplicity over the entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pole {
    pub value: Complex64,
    pub multiplicity: usize,
}

fn q_minus_one<S: Scalar>(q: &S) -> ConfluenceResult<S> {
    let d = q.sub_ref(&S::one());
    if d.is_zero() {
        return Err(ConfluenceError::Input("q = 1 has no δ-form".into()));
    }
    Ok(d)
}

pub fn delta_form<S: Scalar + Field>(sys: &QDifferenceSystem<S>) -> ConfluenceResult<DeltaForm<S>> {
    let inv = q_minus_one(sys.q())?.try_inv().expect("nonzero");
    let n = sys.dim();
    let id: Mat<QRational<S>> = Mat::identity(n);
    let b = sys.matrix().sub(&id).map(|e| e.scale(&inv));
    Ok(DeltaForm { b, q: sys.q().clone() })
}

impl<S: Scalar + Field> DeltaForm<S> {
    pub fn new(b: Mat<QRational<S>>, q: S) -> ConfluenceResult<Self> {
        q_minus_one(&q)?;
        if !b.is_square() {
            return Err(ConfluenceError::Input(format!("{}x{} δ-form", b.rows(), b.cols())));
        }
        Ok(DeltaForm { b, q })
    }

    pub fn matrix(&self) -> &Mat<QRational<S>> {
        &self.b
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    /// `A = I + (q−1)B`.
    pub fn reconstruct(&self) -> QDifferenceSystem<S> {
        let c = q_minus_one(&self.q).expect("checked at construction");
        let a = Mat::identity(self.dim()).add(&self.b.map(|e| e.scale(&c)));
        QDifferenceSystem::new(a, self.q.clone()).expect("square")
    }
}

impl<S: Scalar + Field + ToComplex> DeltaForm<S> {
    /// Finite nonzero and zero poles of `B` at a numeric `q`.
    pub fn poles_at(&self, q: Complex64) -> Vec<Pole> {
        let mut out: Vec<Pole> = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let e = &self.b[(i, j)];
                if e.is_zero() {
                    continue;
                }
                let num: Vec<Complex64> = e.numer().coeffs().iter().map(|c| c.to_complex(q)).collect();
                let den: Vec<Complex64> = e.denom().coeffs().iter().map(|c| c.to_complex(q)).collect();
                for p in entry_poles(&num, &den) {
                    match out.iter_mut().find(|o| same_point(o.value, p.value)) {
                        Some(o) => o.multiplicity = o.multiplicity.max(p.multiplicity),
                        None => out.push(p),
                    }
                }
            }
        }
        out
    }
}

const ROOT_CLUSTER_TOL: f64 = 1e-5;

fn same_point(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= ROOT_CLUSTER_TOL * (1.0 + a.norm().max(b.norm()))
}

fn horner(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a)
}

/// Roots of `Σ c_k x^k`, via companion eigenvalues polished by Newton steps.
pub fn poly_roots(c: &[Complex64]) -> Vec<Complex64> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let comp = Mat::from_fn(deg, deg, |i, j| {
        if i + 1 == j {
            Complex64::new(1.0, 0.0)
        } else if i == deg - 1 {
            -c[j] / lead
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let (roots, _) = eigen_decomposition(&comp);
    let dc: Vec<Complex64> = (1..=deg).map(|k| c[k] * k as f64).collect();
    roots
        .into_iter()
        .map(|mut r| {
            for _ in 0..3 {
                let d = horner(&dc, r);
                if d.norm() == 0.0 {
                    break;
                }
                let step = horner(&c, r) / d;
                if !step.is_finite() {
                    break;
                }
                r -= step;
            }
            r
        })
        .collect()
}

/// Roots of `den` not cancelled by `num`, clustered with multiplicity.
fn entry_poles(num: &[Complex64], den: &[Complex64]) -> Vec<Pole> {
    let scale = |c: &[Complex64], x: Complex64| {
        c.iter().enumerate().map(|(k, a)| a.norm() * x.norm().powi(k as i32)).sum::<f64>()
    };
    let mut num_roots = poly_roots(num);
    let mut out: Vec<Pole> = Vec::new();
    for r in poly_roots(den) {
        if let Some(k) = num_roots.iter().position(|&s| same_point(s, r)) {
            if horner(num, r).norm() <= 1e-9 * scale(num, r).max(1e-300) {
                num_roots.swap_remove(k);
                continue;
            }
        }
        match out.iter_mut().find(|o| same_point(o.value, r)) {
            Some(o) => o.multiplicity += 1,
            None => out.push(Pole { value: r, multiplicity: 1 }),
        }
    }
    out
}

/// `A(Q) ↦ A(Q/c)`.
pub fn q_pullback<S: Scalar + Field>(sys: &QDifferenceSystem<S>, c: &S) -> ConfluenceResult<QDifferenceSystem<S>> {
    let cinv = c.try_inv().ok_or_else(|| ConfluenceError::Input("pullback factor c = 0".into()))?;
    let a = sys.matrix().map(|e| e.scale_var(&cinv));
    Ok(QDifferenceSystem::new(a, sys.q().clone())?)
}

/// Coefficients `b_m` of `Σ a_k σ^k = Σ b_m δ^m`, with `σ = 1 + (q−1)δ`.
pub fn delta_coefficients<S: Scalar + Field>(op: &ScalarQOperator<S>) -> ConfluenceResult<Vec<QRational<S>>> {
    let h = q_minus_one(op.q())?;
    let n = op.order();
    let mut b = vec![QRational::zero(); n + 1];
    for (k, ak) in op.coeffs().iter().enumerate() {
        let mut binom = 1i64;
        let mut hm = S::one();
        for (m, bm) in b.iter_mut().enumerate().take(k + 1) {
            *bm = bm.add(&ak.scale(&S::from_i64(binom).mul_ref(&hm)));
            binom = binom * (k - m) as i64 / (m as i64 + 1);
            hm = hm.mul_ref(&h);
        }
    }
    Ok(b)
}

/// System for `Y = (f, δf, …, δ^{n−1}f)`: `A = I + (q−1)C` with `C` the δ-companion.
pub fn delta_companion<S: Scalar + Field>(op: &ScalarQOperator<S>) -> ConfluenceResult<QDifferenceSystem<S>> {
    let b = delta_coefficients(op)?;
    let n = op.order();
    let bn = &b[n];
    let mut c = Mat::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        c[(i, i + 1)] = QRational::one();
    }
    for (k, bk) in b.iter().enumerate().take(n) {
        c[(n - 1, k)] = bk.div(bn).ok_or_else(|| ConfluenceError::Input("δ-leading coefficient vanishes".into()))?.neg();
    }
    Ok(DeltaForm::new(c, op.q().clone())?.reconstruct())
}

