//! Linear q-difference systems `σ_q X = A(Q) X`.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use qonf_rings::json::{parse_expr, ExprField};
use qonf_rings::{BigInt, BigRational, RationalFunctionQ, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::{QDiffError, QDiffResult};
use crate::field::Field;
use crate::mat::Mat;
use crate::matseries::{check_shape, MatSeries};
use crate::qrational::QRational;

/// Numeric specialization of a coefficient at a complex value of `q`.
pub trait ToComplex {
    fn to_complex(&self, q: Complex64) -> Complex64;
}

impl ToComplex for Complex64 {
    fn to_complex(&self, _q: Complex64) -> Complex64 {
        *self
    }
}

impl ToComplex for BigRational {
    fn to_complex(&self, _q: Complex64) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl ToComplex for RationalFunctionQ {
    fn to_complex(&self, q: Complex64) -> Complex64 {
        self.eval_complex(q)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QDifferenceSystem<S: Scalar + Field> {
    a: Mat<QRational<S>>,
    q: S,
}

/// Output of [`QDifferenceSystem::normalize_to_constant`].
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization<S: Scalar + Field> {
    /// `(σF)·A·F⁻¹ = A0 + O(Q^{D+1})`, `F(0) = I`.
    pub f: MatSeries<S>,
    /// `A(0)`.
    pub a0: Mat<S>,
    /// `F⁻¹`: solutions of `A` are `F⁻¹ X0` with `σX0 = A0 X0`.
    pub gauge: MatSeries<S>,
}

impl<S: Scalar + Field> QDifferenceSystem<S> {
    pub fn new(a: Mat<QRational<S>>, q: S) -> QDiffResult<Self> {
        if !a.is_square() {
            return Err(QDiffError::Dimension(format!("{}x{} system matrix", a.rows(), a.cols())));
        }
        Ok(QDifferenceSystem { a, q })
    }

    /// Constant system `A(Q) = A`.
    pub fn constant(a: &Mat<S>, q: S) -> QDiffResult<Self> {
        Self::new(a.map(|x| QRational::constant(x.clone())), q)
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &Mat<QRational<S>> {
        &self.a
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    /// `(σ_q P)·A·P⁻¹`.
    pub fn gauge_transform(&self, p: &Mat<QRational<S>>) -> QDiffResult<Self> {
        check_shape(p, self.dim())?;
        let pinv = p.inverse()?;
        let sp = p.map(|x| x.scale_var(&self.q));
        Self::new(sp.mul(&self.a).mul(&pinv), self.q.clone())
    }

    /// Taylor expansion of `A` at 0.
    pub fn taylor(&self, d: usize) -> QDiffResult<MatSeries<S>> {
        let n = self.dim();
        let mut coeffs = vec![Mat::zeros(n, n); d + 1];
        for i in 0..n {
            for j in 0..n {
                let t = self.a[(i, j)]
                    .taylor(d)
                    .ok_or_else(|| QDiffError::NotAnalytic(format!("entry ({i},{j}) has a pole at 0")))?;
                for (m, c) in t.into_iter().enumerate() {
                    coeffs[m][(i, j)] = c;
                }
            }
        }
        Ok(MatSeries::new(coeffs))
    }

    /// `(σ_q P)·A·P⁻¹` for a series gauge, truncated at the common order.
    pub fn gauge_transform_series(&self, p: &MatSeries<S>) -> QDiffResult<MatSeries<S>> {
        check_shape(p.coeff(0), self.dim())?;
        let a = self.taylor(p.truncation())?;
        Ok(p.scale_var(&self.q).mul(&a).mul(&p.inverse()?))
    }

    /// Gauge `F` with `F(0) = I` and `(σF)·A·F⁻¹ = A(0)` through `Q^D`.
    ///
    /// Degree `m` solves `q^m F_m A0 − A0 F_m = −Σ_{k<m} q^k F_k A_{m−k}`; a
    /// singular operator there is reported as resonance at `m`.
    pub fn normalize_to_constant(&self, d: usize) -> QDiffResult<Normalization<S>> {
        let n = self.dim();
        let a = self.taylor(d)?;
        let a0 = a.coeff(0).clone();
        if a0.det()?.is_zero_el() {
            return Err(QDiffError::Singular);
        }
        let mut f: Vec<Mat<S>> = vec![Mat::identity(n)];
        let mut qk = S::one();
        let mut qpow = vec![S::one()];
        for _ in 1..=d {
            qk = qk.mul_ref(&self.q);
            qpow.push(qk.clone());
        }
        for m in 1..=d {
            let mut rhs = Mat::zeros(n, n);
            for (k, fk) in f.iter().enumerate() {
                rhs = rhs.sub(&fk.mul(a.coeff(m - k)).scale(&qpow[k]));
            }
            // Unknown F_{i,k} sits at column i·n + k; equation (i, j) at row i·n + j.
            let mut sys: Mat<S> = Mat::zeros(n * n, n * n);
            for i in 0..n {
                for j in 0..n {
                    let row = i * n + j;
                    for k in 0..n {
                        let t = a0[(k, j)].mul_ref(&qpow[m]);
                        sys[(row, i * n + k)] = sys[(row, i * n + k)].add_ref(&t);
                        sys[(row, k * n + j)] = sys[(row, k * n + j)].sub_ref(&a0[(i, k)]);
                    }
                }
            }
            let b = Mat::from_fn(n * n, 1, |r, _| rhs[(r / n, r % n)].clone());
            let x = sys.solve(&b).map_err(|e| match e {
                QDiffError::Singular => QDiffError::Resonance { degree: m },
                other => other,
            })?;
            f.push(Mat::from_fn(n, n, |i, k| x[(i * n + k, 0)].clone()));
        }
        let f = MatSeries::new(f);
        let gauge = f.inverse()?;
        Ok(Normalization { f, a0, gauge })
    }

    /// Residual `σX − A·X` of a matrix series, through its truncation.
    pub fn series_residual(&self, x: &MatSeries<S>) -> QDiffResult<MatSeries<S>> {
        let a = self.taylor(x.truncation())?;
        let lhs = x.scale_var(&self.q);
        let rhs = a.mul(x);
        Ok(MatSeries::new(lhs.coeffs().iter().zip(rhs.coeffs()).map(|(l, r)| l.sub(r)).collect()))
    }
}

impl<S: Scalar + Field + ToComplex> QDifferenceSystem<S> {
    /// Numeric system at `q`; `None` if an entry's denominator vanishes identically.
    pub fn specialize(&self, q: Complex64) -> Option<QDifferenceSystem<Complex64>> {
        let a = self.a.try_map(|r| r.map(|c| c.to_complex(q)))?;
        Some(QDifferenceSystem { a, q: self.q.to_complex(q) })
    }
}

impl QDifferenceSystem<Complex64> {
    pub fn eval(&self, big_q: Complex64) -> QDiffResult<Mat<Complex64>> {
        self.a
            .try_map(|r| r.eval(&big_q))
            .ok_or_else(|| QDiffError::Pole(format!("system matrix has a pole at {big_q}")))
    }
}

/// One nonzero entry `num/den` at `(i, j)`; both are expressions in `Q` and `q`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryJson {
    pub i: usize,
    pub j: usize,
    #[serde(rename = "num_poly_Q")]
    pub num: String,
    #[serde(rename = "den_poly_Q", default = "one_string")]
    pub den: String,
}

fn one_string() -> String {
    "1".into()
}

/// JSON form; `q` is `"q"` for the exact symbolic parameter, a number, or
/// `[re, im]`. Entries not listed are zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemJson {
    pub n: usize,
    pub entries: Vec<EntryJson>,
    pub q: serde_json::Value,
}

struct ExactEntry(QRational<RationalFunctionQ>);

impl Clone for ExactEntry {
    fn clone(&self) -> Self {
        ExactEntry(self.0.clone())
    }
}

impl ExprField for ExactEntry {
    fn from_integer(n: BigInt) -> Self {
        ExactEntry(QRational::constant(RationalFunctionQ::constant(BigRational::from_integer(n))))
    }
    fn add(&self, o: &Self) -> Self {
        ExactEntry(self.0.add(&o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        ExactEntry(self.0.sub(&o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        ExactEntry(self.0.mul(&o.0))
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.0.div(&o.0).map(ExactEntry)
    }
}

/// A parsed system: exact in `q` or numeric.
#[derive(Clone, Debug)]
pub enum ParsedSystem {
    Exact(QDifferenceSystem<RationalFunctionQ>),
    Numeric(QDifferenceSystem<Complex64>),
}

impl ParsedSystem {
    pub fn numeric(&self, q: Option<Complex64>) -> QDiffResult<QDifferenceSystem<Complex64>> {
        match self {
            ParsedSystem::Numeric(s) => Ok(s.clone()),
            ParsedSystem::Exact(s) => {
                let q = q.ok_or_else(|| QDiffError::Input("a numeric q is required".into()))?;
                s.specialize(q).ok_or_else(|| QDiffError::Pole("entry denominator vanishes at this q".into()))
            }
        }
    }
}

pub fn parse_system_json(text: &str) -> QDiffResult<ParsedSystem> {
    let j: SystemJson = serde_json::from_str(text).map_err(|e| QDiffError::Input(e.to_string()))?;
    let n = j.n;
    let var = |name: &str| -> Option<ExactEntry> {
        match name {
            "Q" => Some(ExactEntry(QRational::var())),
            "q" => Some(ExactEntry(QRational::constant(RationalFunctionQ::q()))),
            _ => None,
        }
    };
    let mut exact = Mat::zeros(n, n);
    for e in &j.entries {
        if e.i >= n || e.j >= n {
            return Err(QDiffError::Dimension(format!("entry ({}, {}) outside a {n}x{n} system", e.i, e.j)));
        }
        let num = parse_expr(&e.num)?.eval(&var)?;
        let den = parse_expr(&e.den)?.eval(&var)?;
        exact[(e.i, e.j)] = num.div(&den).ok_or_else(|| QDiffError::Input("zero denominator".into()))?.0;
    }
    let sys = QDifferenceSystem::new(exact, RationalFunctionQ::q())?;
    match &j.q {
        serde_json::Value::String(s) if s == "q" => Ok(ParsedSystem::Exact(sys)),
        serde_json::Value::Array(v) if v.len() == 2 => {
            let re = v[0].as_f64().ok_or_else(|| QDiffError::Input("q real part".into()))?;
            let im = v[1].as_f64().ok_or_else(|| QDiffError::Input("q imaginary part".into()))?;
            let q = Complex64::new(re, im);
            if !(q.norm() > 0.0 && q.norm() < 1.0) {
                return Err(QDiffError::Input(format!("|q| must lie in (0, 1), got {q}")));
            }
            sys.specialize(q)
                .map(ParsedSystem::Numeric)
                .ok_or_else(|| QDiffError::Pole("entry denominator vanishes at this q".into()))
        }
        serde_json::Value::Number(x) => {
            let q = Complex64::new(x.as_f64().unwrap_or(f64::NAN), 0.0);
            if !(q.norm() > 0.0 && q.norm() < 1.0) {
                return Err(QDiffError::Input(format!("|q| must lie in (0, 1), got {q}")));
            }
            sys.specialize(q)
                .map(ParsedSystem::Numeric)
                .ok_or_else(|| QDiffError::Pole("entry denominator vanishes at this q".into()))
        }
        other => Err(QDiffError::Input(format!("unsupported q value {other}"))),
    }
}
