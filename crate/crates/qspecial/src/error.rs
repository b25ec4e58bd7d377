use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("invalid q = {0}: need 0 < |q| < 1")]
    InvalidQ(Complex64),
    #[error("invalid path parameter t = {0}: need 0 < t <= 1")]
    InvalidT(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument {arg} is within tolerance of the pole set -q^Z (k = {k})")]
    Pole { arg: Complex64, k: i64 },
}

pub type SpecialResult<T> = Result<T, SpecialError>;
