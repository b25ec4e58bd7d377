//! Minimal field interface for Gaussian elimination over exact and floating entries.

use num_complex::Complex64;
use qonf_rings::{BigRational, RationalFunctionQ, Scalar};
use std::fmt::Debug;

use crate::qrational::QRational;

/// Field operations with a pivot preference. Method names avoid clashing with
/// [`Scalar`] and `num_traits`.
pub trait Field: Clone + Debug + PartialEq {
    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn is_zero_el(&self) -> bool;
    fn add_el(&self, o: &Self) -> Self;
    fn sub_el(&self, o: &Self) -> Self;
    fn mul_el(&self, o: &Self) -> Self;
    fn neg_el(&self) -> Self;
    fn inv_el(&self) -> Option<Self>;
    /// Larger is a better pivot; zero means unusable.
    fn pivot_weight(&self) -> f64;
}

macro_rules! scalar_field {
    ($t:ty, $w:expr) => {
        impl Field for $t {
            fn zero_el() -> Self {
                <$t as Scalar>::zero()
            }
            fn one_el() -> Self {
                <$t as Scalar>::one()
            }
            fn is_zero_el(&self) -> bool {
                Scalar::is_zero(self)
            }
            fn add_el(&self, o: &Self) -> Self {
                self.add_ref(o)
            }
            fn sub_el(&self, o: &Self) -> Self {
                self.sub_ref(o)
            }
            fn mul_el(&self, o: &Self) -> Self {
                self.mul_ref(o)
            }
            fn neg_el(&self) -> Self {
                self.neg_ref()
            }
            fn inv_el(&self) -> Option<Self> {
                self.try_inv()
            }
            fn pivot_weight(&self) -> f64 {
                let w: fn(&$t) -> f64 = $w;
                w(self)
            }
        }
    };
}

scalar_field!(BigRational, |x| if Scalar::is_zero(x) { 0.0 } else { 1.0 });
scalar_field!(RationalFunctionQ, |x| if Scalar::is_zero(x) {
    0.0
} else {
    // Prefer short entries to limit expression growth.
    1.0 / (1.0 + x.numer().coeffs().len() as f64 + x.denom().coeffs().len() as f64)
});
scalar_field!(Complex64, |x| x.norm());

impl<S: Scalar + Field> Field for QRational<S> {
    fn zero_el() -> Self {
        QRational::zero()
    }
    fn one_el() -> Self {
        QRational::one()
    }
    fn is_zero_el(&self) -> bool {
        self.is_zero()
    }
    fn add_el(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_el(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_el(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_el(&self) -> Self {
        self.neg()
    }
    fn inv_el(&self) -> Option<Self> {
        self.inv()
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0 / (1.0 + self.numer().coeffs().len() as f64 + self.denom().coeffs().len() as f64)
        }
    }
}
