//! Complex q-special functions for `0 < |q| < 1`.
//!
//! Theta values, characters and Pochhammer symbols are available as logarithms
//! so that paths `q = q0^t` with small `t` stay in floating-point range.

pub mod error;
mod logsum;
pub mod pochhammer;
pub mod qvalue;
pub mod theta;

pub use error::{SpecialError, SpecialResult};
pub use pochhammer::{log_qpoch_finite, log_qpoch_infinite, qpoch_finite, qpoch_infinite};
pub use qvalue::{expm1, log_off_spiral, pow_off_spiral, spiral_contains, spiral_parameter, spiral_residual, wrap_angle, QPath, QValue};
pub use theta::{
    jacobi_triple_product_check, log_q_character, log_theta, pole_proximity, q_character, q_log, q_log_with_tol, theta,
    theta_eval, theta_eval_direct, theta_eval_modular, ThetaEval, POLE_TOL,
};

pub use num_complex::Complex64;
