//! The cohomological J-function of ℙᴺ, `Σ_d Q^d / ∏_{r≤d}(H + rz)^{N+1}`.
//!
//! Coefficients are stored at `z = 1`; the monomial `Q^d H^i L^m` carries the
//! implied factor `z^{−(d(N+1)+i)}` ([`jcoh_z_exponent`]). `L` is `log Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use qonf_rings::par::{map_collect, Exec};
use qonf_rings::{LogSeries, NilpotentElement, Scalar, TruncatedQSeries};

use crate::error::{GwError, GwResult};

/// Power of `z` attached to `Q^d H^i` (any `L`-power).
pub fn jcoh_z_exponent(n: usize, d: usize, i: usize) -> i64 {
    -((d * (n + 1) + i) as i64)
}

/// Coefficients `a_{d,i}` of `Q^d H^i` at `z = 1`.
pub fn jcoh_series(n: usize, dmax: usize) -> GwResult<TruncatedQSeries<BigRational>> {
    jcoh_series_at(n, dmax, &BigRational::one(), Exec::default())
}

/// The same series at an exact nonzero `z`.
pub fn jcoh_series_at(n: usize, dmax: usize, z: &BigRational, exec: Exec) -> GwResult<TruncatedQSeries<BigRational>> {
    if z.is_zero() {
        return Err(GwError::Input("z must be nonzero".into()));
    }
    let factors = map_collect(exec, (1..=dmax).collect(), |r| {
        let rz = BigRational::from_integer(BigInt::from(r)) * z;
        NilpotentElement::new(n, vec![rz, BigRational::one()]).pow(n + 1).inv()
    });
    let mut coeffs = Vec::with_capacity(dmax + 1);
    let mut acc = NilpotentElement::one(n);
    coeffs.push(acc.clone());
    for f in factors {
        acc = acc.mul(&f?)?;
        coeffs.push(acc.clone());
    }
    Ok(TruncatedQSeries::from_coeffs(n, coeffs)?)
}

/// `Q^{H/z} = Σ_a L^a H^a / (z^a a!)` as a log series at `z`.
pub fn coh_prefactor(n: usize, dmax: usize, z: &BigRational) -> LogSeries<BigRational> {
    let mut out = LogSeries::zero(n, dmax, n);
    let mut c = BigRational::one();
    for a in 0..=n {
        if a > 0 {
            c /= z * BigRational::from_integer(BigInt::from(a));
        }
        let mut col = vec![BigRational::zero(); n + 1];
        col[a] = c.clone();
        out.set(0, a, NilpotentElement::new(n, col));
    }
    out
}

/// `J̃^coh = Q^{H/z} J^coh` at `z = 1`.
pub fn jcoh_modified(n: usize, dmax: usize) -> GwResult<LogSeries<BigRational>> {
    jcoh_modified_at(n, dmax, &BigRational::one())
}

pub fn jcoh_modified_at(n: usize, dmax: usize, z: &BigRational) -> GwResult<LogSeries<BigRational>> {
    let j = jcoh_series_at(n, dmax, z, Exec::default())?;
    Ok(coh_prefactor(n, dmax, z).mul(&LogSeries::from_series(&j))?)
}

/// `[(zQ∂_Q)^{N+1} − Q] f`.
pub fn coh_apply(f: &LogSeries<BigRational>, n: usize, z: &BigRational) -> GwResult<LogSeries<BigRational>> {
    let mut g = f.clone();
    for _ in 0..=n {
        g = g.q_derivative()?.scale(z);
    }
    Ok(g.sub(&f.mul_q())?)
}

/// Residual of the modified cohomological J-function at `z`.
pub fn jcoh_ode_residual(n: usize, dmax: usize, z: &BigRational) -> GwResult<LogSeries<BigRational>> {
    coh_apply(&jcoh_modified_at(n, dmax, z)?, n, z)
}

/// First `(d, i)` where the series at `z` differs from `z^{−(d(N+1)+i)}·a_{d,i}`.
pub fn homogeneity_defect(n: usize, dmax: usize, z: &BigRational) -> GwResult<Option<(usize, usize)>> {
    let base = jcoh_series(n, dmax)?;
    let at = jcoh_series_at(n, dmax, z, Exec::default())?;
    for d in 0..=dmax {
        for i in 0..=n {
            let e = jcoh_z_exponent(n, d, i);
            let scale = z.pow_u(e.unsigned_abs() as usize).try_inv().expect("z is nonzero");
            if at.get(d, i) != &(base.get(d, i) * &scale) {
                return Ok(Some((d, i)));
            }
        }
    }
    Ok(None)
}
