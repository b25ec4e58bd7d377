//! First-order Taylor data in `q − 1` of simple roots of `P_q(Q)`.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};
use qonf_rings::json::{parse_expr, ExprField};
use qonf_rings::rational_to_f64;

use crate::error::{ConfluenceError, ConfluenceResult};

/// `a + b·i` with `a, b ∈ ℚ`.
pub type GaussianRational = Complex<BigRational>;

pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    Complex::new(qonf_rings::rat(re.0, re.1), qonf_rings::rat(im.0, im.1))
}

pub fn gaussian_to_c64(z: &GaussianRational) -> Complex64 {
    Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

/// `Σ c[k][j] Q^k q^j`; every row is padded to the same length.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariatePoly {
    c: Vec<Vec<GaussianRational>>,
}

impl BivariatePoly {
    pub fn from_coeffs(c: Vec<Vec<GaussianRational>>) -> Self {
        let w = c.iter().map(Vec::len).max().unwrap_or(0).max(1);
        let mut c: Vec<Vec<GaussianRational>> = c
            .into_iter()
            .map(|mut row| {
                row.resize(w, GaussianRational::zero());
                row
            })
            .collect();
        if c.is_empty() {
            c.push(vec![GaussianRational::zero(); w]);
        }
        BivariatePoly { c }
    }

    pub fn constant(z: GaussianRational) -> Self {
        Self::from_coeffs(vec![vec![z]])
    }

    /// Parse an expression in `Q`, `q` and `i`; division only by constants.
    pub fn parse(s: &str) -> ConfluenceResult<Self> {
        let e = parse_expr(s)?;
        let var = |v: &str| -> Option<BivariatePoly> {
            let one = GaussianRational::one();
            let zero = GaussianRational::zero();
            match v {
                "Q" => Some(Self::from_coeffs(vec![vec![zero], vec![one]])),
                "q" => Some(Self::from_coeffs(vec![vec![zero, one]])),
                "i" | "I" => Some(Self::constant(Complex::new(BigRational::zero(), BigRational::one()))),
                _ => None,
            }
        };
        Ok(e.eval(&var)?)
    }

    fn width(&self) -> usize {
        self.c[0].len()
    }

    pub fn coeff(&self, k: usize, j: usize) -> GaussianRational {
        self.c.get(k).and_then(|r| r.get(j)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    fn as_constant(&self) -> Option<GaussianRational> {
        let rest_zero =
            self.c.iter().enumerate().all(|(k, row)| row.iter().enumerate().all(|(j, z)| (k == 0 && j == 0) || z.is_zero()));
        rest_zero.then(|| self.coeff(0, 0))
    }

    fn zip(&self, o: &Self, f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Self {
        let rows = self.c.len().max(o.c.len());
        let w = self.width().max(o.width());
        Self::from_coeffs((0..rows).map(|k| (0..w).map(|j| f(&self.coeff(k, j), &o.coeff(k, j))).collect()).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let rows = self.c.len() + o.c.len() - 1;
        let w = self.width() + o.width() - 1;
        let mut out = vec![vec![GaussianRational::zero(); w]; rows];
        for (k1, r1) in self.c.iter().enumerate() {
            for (j1, a) in r1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k2, r2) in o.c.iter().enumerate() {
                    for (j2, b) in r2.iter().enumerate() {
                        out[k1 + k2][j1 + j2] = &out[k1 + k2][j1 + j2] + a * b;
                    }
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// `(P, ∂_Q P, ∂_q P)` at `(q, Q) = (1, r)`.
    pub fn jet_at_q1(&self, r: &GaussianRational) -> (GaussianRational, GaussianRational, GaussianRational) {
        let mut p = GaussianRational::zero();
        let mut pq_big = GaussianRational::zero();
        let mut pq = GaussianRational::zero();
        let mut rk = GaussianRational::one();
        let mut rk1 = GaussianRational::zero();
        for (k, row) in self.c.iter().enumerate() {
            let s: GaussianRational = row.iter().fold(GaussianRational::zero(), |acc, z| acc + z);
            let ds: GaussianRational = row
                .iter()
                .enumerate()
                .fold(GaussianRational::zero(), |acc, (j, z)| acc + z * BigRational::from_integer(BigInt::from(j)));
            p += &s * &rk;
            pq += &ds * &rk;
            pq_big += &s * &rk1 * BigRational::from_integer(BigInt::from(k));
            rk1 = rk.clone();
            rk = &rk * r;
        }
        (p, pq_big, pq)
    }

    /// Numeric `(P, ∂_Q P, ∂_q P)` at `(1, r)`.
    pub fn jet_at_q1_numeric(&self, r: Complex64) -> (Complex64, Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut p, mut pqb, mut pq) = (zero, zero, zero);
        let (mut rk, mut rk1) = (Complex64::new(1.0, 0.0), zero);
        for (k, row) in self.c.iter().enumerate() {
            let s: Complex64 = row.iter().map(gaussian_to_c64).sum();
            let ds: Complex64 = row.iter().enumerate().map(|(j, z)| gaussian_to_c64(z) * j as f64).sum();
            p += s * rk;
            pq += ds * rk;
            pqb += s * rk1 * k as f64;
            rk1 = rk;
            rk *= r;
        }
        (p, pqb, pq)
    }
}

impl ExprField for BivariatePoly {
    fn from_integer(n: BigInt) -> Self {
        Self::constant(Complex::new(BigRational::from_integer(n), BigRational::zero()))
    }
    fn add(&self, other: &Self) -> Self {
        BivariatePoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        BivariatePoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        BivariatePoly::mul(self, other)
    }
    fn div(&self, other: &Self) -> Option<Self> {
        let c = other.as_constant().filter(|c| !c.is_zero())?;
        let inv = GaussianRational::one() / c;
        Some(self.mul(&Self::constant(inv)))
    }
}

/// `root(q) = r0 + r1·(q − 1) + o(q − 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootTaylor<T> {
    pub r0: T,
    pub r1: T,
}

impl RootTaylor<GaussianRational> {
    /// Taylor data of `1/root(q)`.
    pub fn reciprocal(&self) -> Self {
        let inv = GaussianRational::one() / &self.r0;
        RootTaylor { r1: -(&self.r1 * &inv * &inv), r0: inv }
    }

    /// `κ` with `root(q) = r0·(1 + κ(q − 1)) + o(q − 1)`, so `root(q0^t) ≈ r0·q0^{κt}`.
    pub fn exponent(&self) -> GaussianRational {
        &self.r1 / &self.r0
    }

    pub fn to_c64(&self) -> RootTaylor<Complex64> {
        RootTaylor { r0: gaussian_to_c64(&self.r0), r1: gaussian_to_c64(&self.r1) }
    }
}

/// Exact `r1 = −∂_qP/∂_QP` at `(1, r0)`; `r0` must be an exact root of `P_1`.
pub fn root_taylor(p: &BivariatePoly, r0: &GaussianRational) -> ConfluenceResult<RootTaylor<GaussianRational>> {
    let (v, dq_big, dq) = p.jet_at_q1(r0);
    if !v.is_zero() {
        return Err(ConfluenceError::Input(format!("{r0} is not a root of P at q = 1")));
    }
    if dq_big.is_zero() {
        return Err(ConfluenceError::MultipleRoot);
    }
    Ok(RootTaylor { r0: r0.clone(), r1: -(dq / dq_big) })
}

/// Numeric variant: Newton-polishes an approximate base root first.
pub fn root_taylor_numeric(p: &BivariatePoly, guess: Complex64) -> ConfluenceResult<RootTaylor<Complex64>> {
    let mut r = guess;
    for _ in 0..50 {
        let (v, d, _) = p.jet_at_q1_numeric(r);
        if d.norm() < 1e-12 * (1.0 + v.norm()) {
            return Err(ConfluenceError::MultipleRoot);
        }
        let step = v / d;
        r -= step;
        if step.norm() <= 1e-15 * (1.0 + r.norm()) {
            break;
        }
    }
    let (v, d, dq) = p.jet_at_q1_numeric(r);
    if v.norm() > 1e-9 * (1.0 + r.norm()) {
        return Err(ConfluenceError::Input(format!("Newton iteration from {guess} did not reach a root")));
    }
    if d.norm() < 1e-8 {
        return Err(ConfluenceError::MultipleRoot);
    }
    Ok(RootTaylor { r0: r, r1: -dq / d })
}
