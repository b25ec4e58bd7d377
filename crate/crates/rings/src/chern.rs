//! Basis re-tagging between K-theory and cohomology of projective space.
//!
//! The isomorphism sends `(1 − P⁻¹)^i` to `H^i`, so on coefficient arrays it is
//! the identity. The newtypes keep the two readings from being mixed.

use crate::nilpotent::NilpotentElement;
use crate::scalar::Scalar;

/// Element of `K(ℙᴺ)` in the basis `(1 − P⁻¹)^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct KClass<S: Scalar>(pub NilpotentElement<S>);

/// Element of `H*(ℙᴺ)` in the basis `H^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HClass<S: Scalar>(pub NilpotentElement<S>);

pub fn chern_iso<S: Scalar>(x: &KClass<S>) -> HClass<S> {
    HClass(x.0.clone())
}

/// Inverse of [`chern_iso`].
pub fn chern_iso_inv<S: Scalar>(x: &HClass<S>) -> KClass<S> {
    KClass(x.0.clone())
}
