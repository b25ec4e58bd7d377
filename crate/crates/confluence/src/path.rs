//! Limits along `q(t) = q0^t`, `t → 0`, and the closed-form asymptotics of
//! Pochhammer and theta ratios.

use num_complex::Complex64;
use qonf_qdiff::{max_norm, Mat};
use qonf_qspecial::{log_off_spiral, log_qpoch_infinite, log_theta, spiral_contains, QPath, QValue};
use qonf_rings::par::{map_collect, Exec};
use serde::Serialize;

use crate::error::{ConfluenceError, ConfluenceResult};

/// Angular tolerance for membership of a spiral.
pub const SPIRAL_TOL: f64 = 1e-8;
/// Accepted band for `|f(t/2) − f(t/4)| / |f(t) − f(t/2)|` under first-order convergence.
pub const LINEAR_RATIO_BAND: (f64, f64) = (0.35, 0.65);

/// Decreasing `t` values, each half the previous one.
#[derive(Clone, Debug, PartialEq)]
pub struct TSchedule {
    ts: Vec<f64>,
}

impl Default for TSchedule {
    fn default() -> Self {
        Self::halvings(4, 16)
    }
}

impl TSchedule {
    /// `t = 2^{−kmin}, …, 2^{−kmax}`.
    pub fn halvings(kmin: i32, kmax: i32) -> Self {
        TSchedule { ts: (kmin..=kmax).map(|k| 2f64.powi(-k)).collect() }
    }

    pub fn ts(&self) -> &[f64] {
        &self.ts
    }
}

/// Extrapolated limit with its convergence diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct PathLimit<V> {
    pub value: V,
    pub samples: Vec<(f64, V)>,
    /// `2f(t/2) − f(t)` for each consecutive pair.
    pub richardson: Vec<V>,
    /// Successive difference ratios; `1/2` for first-order convergence.
    pub ratios: Vec<f64>,
    /// `−log₂` of the last ratio.
    pub observed_order: Option<f64>,
}

impl<V> PathLimit<V> {
    pub fn last_ratio(&self) -> Option<f64> {
        self.ratios.last().copied()
    }

    /// Last ratio inside [`LINEAR_RATIO_BAND`].
    pub fn is_linear(&self) -> bool {
        self.last_ratio().is_some_and(|r| r >= LINEAR_RATIO_BAND.0 && r <= LINEAR_RATIO_BAND.1)
    }
}

fn check_domain(q0: Complex64, big_q: Complex64, excluded: &[Complex64]) -> ConfluenceResult<()> {
    QValue::new(q0)?;
    for &nu in excluded {
        if nu.norm() == 0.0 {
            continue;
        }
        if spiral_contains(nu, q0, big_q, SPIRAL_TOL) {
            return Err(ConfluenceError::Domain(format!("Q = {big_q} lies on the spiral {nu}·q0^ℝ")));
        }
    }
    Ok(())
}

fn vec_limit(ts: &[f64], vals: Vec<Vec<Complex64>>) -> PathLimit<Vec<Complex64>> {
    let dist = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let richardson: Vec<Vec<Complex64>> =
        vals.windows(2).map(|w| w[1].iter().zip(&w[0]).map(|(a, b)| 2.0 * a - b).collect()).collect();
    let diffs: Vec<f64> = vals.windows(2).map(|w| dist(&w[1], &w[0])).collect();
    let ratios: Vec<f64> = diffs.windows(2).filter(|w| w[0] > 0.0).map(|w| w[1] / w[0]).collect();
    let observed_order = ratios.last().filter(|r| **r > 0.0).map(|r| -r.log2());
    let value = richardson.last().cloned().unwrap_or_else(|| vals.last().cloned().unwrap_or_default());
    PathLimit { value, samples: ts.iter().copied().zip(vals).collect(), richardson, ratios, observed_order }
}

/// Richardson-extrapolated `lim_{t→0} f(q0^t)` of a vector-valued evaluator.
pub fn limit_vector_along_path<F>(
    f: F,
    q0: Complex64,
    big_q: Complex64,
    excluded: &[Complex64],
    schedule: &TSchedule,
    exec: Exec,
) -> ConfluenceResult<PathLimit<Vec<Complex64>>>
where
    F: Fn(&QValue) -> ConfluenceResult<Vec<Complex64>> + Sync + Send,
{
    check_domain(q0, big_q, excluded)?;
    if schedule.ts().is_empty() {
        return Err(ConfluenceError::Input("empty t-schedule".into()));
    }
    let vals = map_collect(exec, schedule.ts().to_vec(), |t| f(&QPath::new(q0, t)?.q()));
    let vals: Vec<Vec<Complex64>> = vals.into_iter().collect::<ConfluenceResult<_>>()?;
    Ok(vec_limit(schedule.ts(), vals))
}

/// Scalar form of [`limit_vector_along_path`].
pub fn limit_solution_along_path<F>(
    f: F,
    q0: Complex64,
    big_q: Complex64,
    excluded: &[Complex64],
    schedule: &TSchedule,
    exec: Exec,
) -> ConfluenceResult<PathLimit<Complex64>>
where
    F: Fn(&QValue) -> ConfluenceResult<Complex64> + Sync + Send,
{
    let v = limit_vector_along_path(|q| Ok(vec![f(q)?]), q0, big_q, excluded, schedule, exec)?;
    Ok(PathLimit {
        value: v.value[0],
        samples: v.samples.into_iter().map(|(t, x)| (t, x[0])).collect(),
        richardson: v.richardson.into_iter().map(|x| x[0]).collect(),
        ratios: v.ratios,
        observed_order: v.observed_order,
    })
}

/// Matrix form of [`limit_vector_along_path`], entries in row-major order.
pub fn limit_matrix_along_path<F>(
    f: F,
    q0: Complex64,
    big_q: Complex64,
    excluded: &[Complex64],
    schedule: &TSchedule,
    exec: Exec,
) -> ConfluenceResult<PathLimit<Mat<Complex64>>>
where
    F: Fn(&QValue) -> ConfluenceResult<Mat<Complex64>> + Sync + Send,
{
    let shape = std::sync::OnceLock::new();
    let v = limit_vector_along_path(
        |q| {
            let m = f(q)?;
            let _ = shape.set((m.rows(), m.cols()));
            Ok((0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect())
        },
        q0,
        big_q,
        excluded,
        schedule,
        exec,
    )?;
    let (r, c) = *shape.get().expect("at least one sample");
    let to_mat = |x: &[Complex64]| Mat::from_fn(r, c, |i, j| x[i * c + j]);
    Ok(PathLimit {
        value: to_mat(&v.value),
        samples: v.samples.iter().map(|(t, x)| (*t, to_mat(x))).collect(),
        richardson: v.richardson.iter().map(|x| to_mat(x)).collect(),
        ratios: v.ratios,
        observed_order: v.observed_order,
    })
}

/// `max |a − b| / max(1, max |b|)`.
pub fn relative_distance(a: &Mat<Complex64>, b: &Mat<Complex64>) -> f64 {
    max_norm(&a.sub(b)) / max_norm(b).max(1.0)
}

/// `log(1 − Q0)` continued along `1 − Q0·q0^s` from `s = ∞` down to `s = 0`.
///
/// This is the branch carried by `log (Q0;q)_∞` as `q = q0^t → 1`.
pub fn log_one_minus_along_spiral(big_q0: Complex64, q0: Complex64) -> ConfluenceResult<Complex64> {
    check_qpoch_domain(big_q0, q0)?;
    let lq = q0.ln();
    let r = lq.re;
    let one = Complex64::new(1.0, 0.0);
    let mut s = if big_q0.norm() > 1e-3 { (1e-3 / big_q0.norm()).ln() / r } else { 0.0 };
    let mut w = one - big_q0 * (lq * s).exp();
    let mut acc = w.ln();
    while s > 0.0 {
        let z = big_q0 * (lq * s).exp();
        let ds = (0.05f64).min(0.05 * w.norm() / (z.norm() * lq.norm())).min(s);
        s -= ds;
        let w_next = one - big_q0 * (lq * s).exp();
        acc += (w_next / w).ln();
        w = w_next;
    }
    Ok(acc)
}

fn check_qpoch_domain(big_q0: Complex64, q0: Complex64) -> ConfluenceResult<()> {
    QValue::new(q0)?;
    if (big_q0 - 1.0).norm() == 0.0 || spiral_contains(Complex64::new(1.0, 0.0), q0, big_q0, SPIRAL_TOL) {
        return Err(ConfluenceError::Domain(format!("Q0 = {big_q0} lies on q0^ℝ")));
    }
    Ok(())
}

/// `lim (Q0 q^{α1};q)_∞ / (Q0 q^{α2};q)_∞ = (1 − Q0)^{α2 − α1}` along `q = q0^t`.
pub fn asymptotic_qpoch_ratio(big_q0: Complex64, a1: Complex64, a2: Complex64, q0: Complex64) -> ConfluenceResult<Complex64> {
    check_qpoch_domain(big_q0, q0)?;
    if a1 == a2 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(((a2 - a1) * log_one_minus_along_spiral(big_q0, q0)?).exp())
}

fn check_theta_domain(big_q0: Complex64, q0: Complex64) -> ConfluenceResult<()> {
    QValue::new(q0)?;
    if big_q0.norm() == 0.0 || spiral_contains(Complex64::new(-1.0, 0.0), q0, big_q0, SPIRAL_TOL) {
        return Err(ConfluenceError::Domain(format!("Q0 = {big_q0} lies on −q0^ℝ")));
    }
    Ok(())
}

/// `lim θ(Q0 q^{α1}) / θ(Q0 q^{α2}) = Q0^{α2 − α1}`, logarithm cut along `−q0^ℝ`.
pub fn asymptotic_theta_ratio(big_q0: Complex64, a1: Complex64, a2: Complex64, q0: Complex64) -> ConfluenceResult<Complex64> {
    check_theta_domain(big_q0, q0)?;
    if a1 == a2 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(((a2 - a1) * log_off_spiral(big_q0, q0)).exp())
}

/// `(Q0 q^{α1};q)_∞ / (Q0 q^{α2};q)_∞` at `q = q0^t`.
pub fn path_qpoch_ratio(big_q0: Complex64, a1: Complex64, a2: Complex64, q0: Complex64, t: f64) -> ConfluenceResult<Complex64> {
    check_qpoch_domain(big_q0, q0)?;
    let q = QPath::new(q0, t)?.q();
    let x1 = big_q0 * q.powc(a1);
    let x2 = big_q0 * q.powc(a2);
    Ok((log_qpoch_infinite(x1, &q) - log_qpoch_infinite(x2, &q)).exp())
}

/// `θ(Q0 q^{α1}) / θ(Q0 q^{α2})` at `q = q0^t`.
pub fn path_theta_ratio(big_q0: Complex64, a1: Complex64, a2: Complex64, q0: Complex64, t: f64) -> ConfluenceResult<Complex64> {
    check_theta_domain(big_q0, q0)?;
    let q = QPath::new(q0, t)?.q();
    let tol = 1e-15;
    Ok((log_theta(&q, big_q0 * q.powc(a1), tol)? - log_theta(&q, big_q0 * q.powc(a2), tol)?).exp())
}
