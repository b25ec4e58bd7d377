//! Named example systems over `ℚ(q)`.

use num_rational::BigRational;
use qonf_qdiff::{Mat, QDifferenceSystem, QRational, ScalarQOperator};
use qonf_rings::{Poly, RationalFunctionQ as R};

use crate::delta::{delta_companion, q_pullback};
use crate::error::{ConfluenceError, ConfluenceResult};

pub const BUILTIN_NAMES: [&str; 4] = ["pochhammer-raw", "pochhammer-scaled", "irregular", "pn-j"];

fn scalar(e: QRational<R>) -> QDifferenceSystem<R> {
    QDifferenceSystem::new(Mat::from_fn(1, 1, |_, _| e.clone()), R::q()).expect("1x1")
}

/// `σf = (1 − Q)f`.
pub fn pochhammer_raw() -> QDifferenceSystem<R> {
    scalar(QRational::from_poly(Poly::from_coeffs(vec![R::one(), R::from_integer(-1)])))
}

/// `σf = (1 − (1 − q)Q)f`.
pub fn pochhammer_scaled() -> QDifferenceSystem<R> {
    let omq = &R::one() - &R::q();
    scalar(QRational::from_poly(Poly::from_coeffs(vec![R::one(), -omq])))
}

/// `σf = (1 + (q − 1)/(Q + q − 1))f`.
pub fn irregular() -> QDifferenceSystem<R> {
    let h = &R::q() - &R::one();
    let den = QRational::from_poly(Poly::from_coeffs(vec![h.clone(), R::one()]));
    scalar(QRational::one().add(&QRational::constant(h).div(&den).expect("nonzero")))
}

/// δ-companion of `(1 − σ)^{N+1} − Q` pulled back by `c = (z/(1 − q))^{N+1}`.
pub fn pn_j(n: usize, z: &BigRational) -> ConfluenceResult<QDifferenceSystem<R>> {
    if num_traits::Zero::is_zero(z) {
        return Err(ConfluenceError::Input("z = 0".into()));
    }
    let sys = delta_companion(&ScalarQOperator::pn(n, R::q()))?;
    let c = (&R::constant(z.clone()) / &(&R::one() - &R::q())).pow(n + 1);
    q_pullback(&sys, &c)
}

/// Look up a builtin; `pn-j` uses `N` and `z`.
pub fn builtin(name: &str, n: usize, z: &BigRational) -> ConfluenceResult<QDifferenceSystem<R>> {
    match name {
        "pochhammer-raw" => Ok(pochhammer_raw()),
        "pochhammer-scaled" => Ok(pochhammer_scaled()),
        "irregular" => Ok(irregular()),
        "pn-j" => pn_j(n, z),
        other => Err(ConfluenceError::Input(format!("unknown builtin `{other}`; expected one of {BUILTIN_NAMES:?}"))),
    }
}
