//! Regular-singular differential systems `Q∂_Q X = B(Q)X` and their
//! fundamental solutions at `Q = 0`.
//!
//! `X(Q) = P(Q)·X0(Q)` with `P(0) = I` and `Q∂X0 = B(0)X0`. `X0` is
//! `V·diag(Q^λ)·V⁻¹` for semisimple `B(0)` and `Q^μ·exp(N log Q)` for a
//! single eigenvalue `μ` with nilpotent part `N`.

use num_complex::Complex64;
use num_rational::BigRational;
use qonf_qdiff::{eigen_decomposition, exp_nilpotent, max_norm, Field, Mat, MatSeries, QRational, EIGEN_CLUSTER_TOL};
use qonf_rings::poly::format_poly;
use qonf_rings::{rational_to_f64, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::{ConfluenceError, ConfluenceResult};

/// Tolerance for an eigenvalue difference to count as an integer.
pub const INTEGER_GAP_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct ODESystem<S: Scalar + Field> {
    b: Mat<QRational<S>>,
}

impl<S: Scalar + Field> ODESystem<S> {
    pub fn new(b: Mat<QRational<S>>) -> ConfluenceResult<Self> {
        if !b.is_square() {
            return Err(ConfluenceError::Input(format!("{}x{} ODE matrix", b.rows(), b.cols())));
        }
        Ok(ODESystem { b })
    }

    pub fn constant(b: &Mat<S>) -> Self {
        ODESystem { b: b.map(|x| QRational::constant(x.clone())) }
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    pub fn matrix(&self) -> &Mat<QRational<S>> {
        &self.b
    }

    /// True when every entry is analytic at `Q = 0`.
    pub fn is_first_kind(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.b[(i, j)].taylor(0).is_some()))
    }

    pub fn taylor(&self, d: usize) -> ConfluenceResult<MatSeries<S>> {
        let n = self.dim();
        let mut coeffs = vec![Mat::zeros(n, n); d + 1];
        for i in 0..n {
            for j in 0..n {
                let t = self.b[(i, j)]
                    .taylor(d)
                    .ok_or_else(|| ConfluenceError::NotAnalytic(format!("entry ({i}, {j}) has a pole at Q = 0")))?;
                for (m, c) in t.into_iter().enumerate() {
                    coeffs[m][(i, j)] = c;
                }
            }
        }
        Ok(MatSeries::new(coeffs))
    }

    /// Gauge `P` with `P(0) = I` and `Q∂P = B·P − P·B(0)` through `Q^D`.
    ///
    /// Degree `m` solves `m·P_m − [B_0, P_m] = Σ_{k≥1} B_k P_{m−k}`; a singular
    /// operator there is resonance at `m`.
    pub fn gauge_series(&self, d: usize) -> ConfluenceResult<MatSeries<S>> {
        let n = self.dim();
        let b = self.taylor(d)?;
        let b0 = b.coeff(0).clone();
        let mut p: Vec<Mat<S>> = vec![Mat::identity(n)];
        for m in 1..=d {
            let mut rhs: Mat<S> = Mat::zeros(n, n);
            for k in 1..=m {
                rhs = rhs.add(&b.coeff(k).mul(&p[m - k]));
            }
            let mut sys: Mat<S> = Mat::zeros(n * n, n * n);
            let mf = S::from_i64(m as i64);
            for i in 0..n {
                for j in 0..n {
                    let row = i * n + j;
                    sys[(row, row)] = sys[(row, row)].add_ref(&mf);
                    for k in 0..n {
                        sys[(row, k * n + j)] = sys[(row, k * n + j)].sub_ref(&b0[(i, k)]);
                        sys[(row, i * n + k)] = sys[(row, i * n + k)].add_ref(&b0[(k, j)]);
                    }
                }
            }
            let rhs_v = Mat::from_fn(n * n, 1, |r, _| rhs[(r / n, r % n)].clone());
            let x = sys.solve(&rhs_v).map_err(|e| match e {
                qonf_qdiff::QDiffError::Singular => ConfluenceError::Resonance { degree: m },
                other => other.into(),
            })?;
            p.push(Mat::from_fn(n, n, |i, j| x[(i * n + j, 0)].clone()));
        }
        Ok(MatSeries::new(p))
    }

    /// `Q∂P − B·P + P·B(0)` through the truncation of `P`.
    pub fn gauge_residual(&self, p: &MatSeries<S>) -> ConfluenceResult<MatSeries<S>> {
        let d = p.truncation();
        let b = self.taylor(d)?;
        let bp = b.mul(p);
        let b0 = b.coeff(0);
        let out = (0..=d)
            .map(|m| p.coeff(m).scale(&S::from_i64(m as i64)).sub(bp.coeff(m)).add(&p.coeff(m).mul(b0)))
            .collect();
        Ok(MatSeries::new(out))
    }
}

impl ODESystem<Complex64> {
    pub fn eval(&self, big_q: Complex64) -> ConfluenceResult<Mat<Complex64>> {
        self.b
            .try_map(|e| e.eval(&big_q))
            .ok_or_else(|| ConfluenceError::Domain(format!("Q = {big_q} is a pole of B")))
    }
}

impl ODESystem<BigRational> {
    pub fn to_complex(&self) -> ODESystem<Complex64> {
        let conv = |c: &BigRational| Complex64::new(rational_to_f64(c), 0.0);
        ODESystem { b: self.b.map(|e| e.map(conv).expect("nonzero denominator stays nonzero")) }
    }

    pub fn to_json(&self) -> OdeJson {
        let fmt = |p: &qonf_rings::Poly<BigRational>| format_poly(p, "Q", |c| c.to_string());
        let mut entries = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let e = &self.b[(i, j)];
                if !e.is_zero() {
                    entries.push(OdeEntryJson { i, j, num: fmt(e.numer()), den: fmt(e.denom()) });
                }
            }
        }
        OdeJson { n: self.dim(), entries }
    }
}

/// `{"n": …, "entries": [{"i", "j", "num", "den"}]}`, polynomials in `Q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OdeJson {
    pub n: usize,
    pub entries: Vec<OdeEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OdeEntryJson {
    pub i: usize,
    pub j: usize,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug)]
pub enum OdeExponents {
    /// `B(0) = V·diag(λ)·V⁻¹`.
    Semisimple { lambdas: Vec<Complex64>, v: Mat<Complex64>, vinv: Mat<Complex64> },
    /// `B(0) = μ·I + N`, `N` nilpotent.
    SingleEigenvalue { mu: Complex64, n: Mat<Complex64> },
}

#[derive(Clone, Debug)]
pub struct OdeFundamentalSolution {
    pub gauge: MatSeries<Complex64>,
    pub b0: Mat<Complex64>,
    pub exponents: OdeExponents,
    system: ODESystem<Complex64>,
}

fn is_integer_gap(d: Complex64, max: usize) -> Option<usize> {
    let r = d.re.round();
    if r >= 1.0 && r <= max as f64 && (d - Complex64::new(r, 0.0)).norm() <= INTEGER_GAP_TOL {
        Some(r as usize)
    } else {
        None
    }
}

/// Split `B0` into the supported exponent structures.
pub fn classify_constant(b0: &Mat<Complex64>) -> ConfluenceResult<OdeExponents> {
    let n = b0.rows();
    let scale = 1.0 + max_norm(b0);
    let mut trace = Complex64::new(0.0, 0.0);
    for i in 0..n {
        trace += b0[(i, i)];
    }
    let mu = trace / n as f64;
    let nil = b0.sub(&Mat::identity(n).scale(&mu));
    let mut pw = Mat::identity(n);
    for _ in 0..n {
        pw = pw.mul(&nil);
    }
    if max_norm(&pw) <= EIGEN_CLUSTER_TOL * scale.powi(n as i32) {
        return Ok(OdeExponents::SingleEigenvalue { mu, n: nil });
    }
    let (lambdas, v) = eigen_decomposition(b0);
    for i in 0..n {
        for j in 0..i {
            if (lambdas[i] - lambdas[j]).norm() <= EIGEN_CLUSTER_TOL * scale {
                return Err(ConfluenceError::UnsupportedJordan(
                    "repeated eigenvalue of B(0) alongside distinct ones".into(),
                ));
            }
        }
    }
    let vinv = v.inverse()?;
    Ok(OdeExponents::Semisimple { lambdas, v, vinv })
}

/// Fundamental solution at 0 with gauge truncated at `Q^D`.
pub fn ode_frobenius_solution(ode: &ODESystem<Complex64>, d: usize) -> ConfluenceResult<OdeFundamentalSolution> {
    let b0 = ode.taylor(0)?.coeff(0).clone();
    let exponents = classify_constant(&b0)?;
    if let OdeExponents::Semisimple { lambdas, .. } = &exponents {
        for a in lambdas {
            for b in lambdas {
                if let Some(k) = is_integer_gap(a - b, d) {
                    return Err(ConfluenceError::Resonance { degree: k });
                }
            }
        }
    }
    let gauge = ode.gauge_series(d)?;
    Ok(OdeFundamentalSolution { gauge, b0, exponents, system: ode.clone() })
}

impl OdeFundamentalSolution {
    pub fn dim(&self) -> usize {
        self.b0.rows()
    }

    /// `X0` with `log Q` supplied by the caller.
    pub fn eval_constant_part(&self, log_q: Complex64) -> Mat<Complex64> {
        match &self.exponents {
            OdeExponents::Semisimple { lambdas, v, vinv } => {
                let n = lambdas.len();
                let diag = Mat::from_fn(n, n, |i, j| if i == j { (lambdas[i] * log_q).exp() } else { Complex64::new(0.0, 0.0) });
                v.mul(&diag).mul(vinv)
            }
            OdeExponents::SingleEigenvalue { mu, n } => exp_nilpotent(n, log_q).scale(&(mu * log_q).exp()),
        }
    }

    /// `X(Q)` on the branch where `log Q = log_q`.
    pub fn eval_with_log(&self, big_q: Complex64, log_q: Complex64) -> Mat<Complex64> {
        self.gauge.eval(big_q).mul(&self.eval_constant_part(log_q))
    }

    /// `X(Q)` on the principal branch.
    pub fn eval(&self, big_q: Complex64) -> Mat<Complex64> {
        self.eval_with_log(big_q, big_q.ln())
    }

    /// `max |Q∂P + P·B(0) − B·P| / max |P|` at `Q`; equals the relative residual of `X`.
    pub fn residual(&self, big_q: Complex64) -> ConfluenceResult<f64> {
        let n = self.dim();
        let mut p = Mat::zeros(n, n);
        let mut qp = Mat::zeros(n, n);
        let mut pw = Complex64::new(1.0, 0.0);
        for (m, c) in self.gauge.coeffs().iter().enumerate() {
            p = p.add(&c.scale(&pw));
            qp = qp.add(&c.scale(&(pw * m as f64)));
            pw *= big_q;
        }
        let r = qp.add(&p.mul(&self.b0)).sub(&self.system.eval(big_q)?.mul(&p));
        Ok(max_norm(&r) / max_norm(&p))
    }
}
