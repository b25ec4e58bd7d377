//! Exact coefficient rings for q-difference and confluence computations.
//!
//! Scalars are [`BigRational`], [`RationalFunctionQ`] or [`Complex64`]. On top of
//! them sit the truncated nilpotent ring `S[ε]/(ε^{N+1})`, truncated series in
//! `Q`, and series whose coefficients are polynomials in a formal logarithm.

pub mod binomial;
pub mod chern;
pub mod error;
pub mod json;
pub mod logseries;
pub mod nilpotent;
pub mod par;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod series;
pub mod zgcd;

pub use binomial::{binom_poly, nil_binomial_power, BinomialPower, LPoly};
pub use chern::{chern_iso, chern_iso_inv, HClass, KClass};
pub use error::{RingError, RingResult};
pub use logseries::LogSeries;
pub use nilpotent::{nil_inv, nil_mul, NilpotentElement};
pub use poly::Poly;
pub use ratfunc::{qfactorial, qpoch_exact, QPoly, RationalFunctionQ};
pub use scalar::{rat, rational_to_f64, Scalar};
pub use series::{series_scale_pullback, TruncatedQSeries};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;
