//! The four-condition confluence test for exact-`q` systems.
//!
//! Conditions 2 and 3 are decided exactly. Condition 1 uses the poles at `q0`.
//! Condition 4 is sampled along `q0^t`, with eigenvectors normalised to a unit
//! entry at the first nonzero component of the limiting eigenvector.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use qonf_qdiff::{eigen_decomposition, max_norm, Mat, QDifferenceSystem, QRational, EIGEN_CLUSTER_TOL};
use qonf_qspecial::{spiral_contains, QPath, QValue};
use qonf_rings::zgcd::gcd_rational;
use qonf_rings::{rational_to_f64, Poly, RationalFunctionQ};
use serde::{Serialize, Serializer};

use crate::delta::{delta_form, DeltaForm};
use crate::error::ConfluenceResult;
use crate::ode::{ODESystem, INTEGER_GAP_TOL};
use crate::path::{TSchedule, SPIRAL_TOL};

#[derive(Clone, Debug, Serialize)]
pub struct SpiralCheck {
    pub ok: bool,
    /// Distinct poles of `B` at `q0` as `(re, im, multiplicity)`.
    pub poles: Vec<(f64, f64, usize)>,
    /// Index pairs into `poles` sharing a spiral.
    pub witness_pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryLimit {
    pub i: usize,
    pub j: usize,
    /// Order of `B_ij` at `q = 1` (`None` for a zero entry).
    pub order_at_one: Option<i64>,
    /// `num/den` of the limit in `Q`, when finite.
    pub limit: Option<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitCheck {
    pub ok: bool,
    pub entries: Vec<EntryLimit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityCheck {
    pub ok: bool,
    /// `B̃` analytic at `Q = 0`.
    pub first_kind: bool,
    /// Nonzero poles of `B̃` are simple.
    pub simple_poles: bool,
    pub non_resonant: bool,
    pub eigenvalues: Vec<(f64, f64)>,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JordanCheck {
    pub ok: bool,
    pub normalization: &'static str,
    /// `(t, max |P_t − P̃|)`.
    pub distances: Vec<(f64, f64)>,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub confluent: bool,
    pub q0: (f64, f64),
    pub spiral_separation: SpiralCheck,
    pub limit_exists: LimitCheck,
    pub limit_regular_singular: RegularityCheck,
    pub jordan_basis_converges: JordanCheck,
    #[serde(serialize_with = "ser_limit")]
    pub limit_system: Option<ODESystem<BigRational>>,
}

fn ser_limit<Sr: Serializer>(v: &Option<ODESystem<BigRational>>, s: Sr) -> Result<Sr::Ok, Sr::Error> {
    v.as_ref().map(ODESystem::to_json).serialize(s)
}

impl ConfluenceReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub const JORDAN_NORMALIZATION: &str = "eigenvectors scaled to 1 at the first nonzero entry of the limiting eigenvector";

fn q_minus_one_pow(k: i64) -> RationalFunctionQ {
    let h = &RationalFunctionQ::q() - &RationalFunctionQ::one();
    if k >= 0 {
        h.pow(k as usize)
    } else {
        h.inv().expect("nonzero").pow((-k) as usize)
    }
}

/// `(q−1)`-adic order of a polynomial in `Q` and its leading part at `q = 1`.
fn leading_at_one(p: &Poly<RationalFunctionQ>) -> Option<(i64, Poly<BigRational>)> {
    let v = p.coeffs().iter().filter(|c| !c.is_zero()).map(RationalFunctionQ::order_at_one).min()?;
    let scale = q_minus_one_pow(-v);
    let lead = p.map(|c| (c * &scale).limit_q_to_1().expect("order ≥ 0 after scaling"));
    Some((v, lead))
}

fn entry_limit(e: &QRational<RationalFunctionQ>) -> (Option<i64>, Option<QRational<BigRational>>) {
    let Some((vn, ln)) = leading_at_one(e.numer()) else {
        return (None, Some(QRational::zero()));
    };
    let (vd, ld) = leading_at_one(e.denom()).expect("nonzero denominator");
    let order = vn - vd;
    let lim = match order {
        o if o < 0 => None,
        0 => Some(reduce(&QRational::new(ln, ld).expect("nonzero leading denominator"))),
        _ => Some(QRational::zero()),
    };
    (Some(order), lim)
}

fn reduce(e: &QRational<BigRational>) -> QRational<BigRational> {
    if e.is_zero() {
        return QRational::zero();
    }
    let g = gcd_rational(e.numer(), e.denom());
    let lead = e.denom().div_exact(&g).expect("gcd divides");
    let lc = lead.lead().cloned().expect("nonzero").recip();
    QRational::new(e.numer().div_exact(&g).expect("gcd divides").scale(&lc), lead.scale(&lc)).expect("nonzero")
}

fn fmt_q(p: &Poly<BigRational>) -> String {
    qonf_rings::poly::format_poly(p, "Q", |c| c.to_string())
}

/// Entrywise `lim_{q→1} B`, with per-entry diagnostics.
pub fn limit_of_delta_form(df: &DeltaForm<RationalFunctionQ>) -> (LimitCheck, Option<ODESystem<BigRational>>) {
    let n = df.dim();
    let mut entries = Vec::new();
    let mut lim = Mat::zeros(n, n);
    let mut ok = true;
    for i in 0..n {
        for j in 0..n {
            let (order, l) = entry_limit(&df.matrix()[(i, j)]);
            match &l {
                Some(e) => lim[(i, j)] = e.clone(),
                None => ok = false,
            }
            let limit = l.map(|e| (fmt_q(e.numer()), fmt_q(e.denom())));
            entries.push(EntryLimit { i, j, order_at_one: order, limit });
        }
    }
    let sys = ok.then(|| ODESystem::new(lim).expect("square"));
    (LimitCheck { ok, entries }, sys)
}

fn c64(m: &Mat<BigRational>) -> Mat<Complex64> {
    m.map(|c| Complex64::new(rational_to_f64(c), 0.0))
}

/// Condition 3 on an exact limit system.
pub fn regularity(ode: &ODESystem<BigRational>) -> RegularityCheck {
    let n = ode.dim();
    let mut diagnostics = Vec::new();
    let mut first_kind = true;
    let mut simple_poles = true;
    for i in 0..n {
        for j in 0..n {
            let e = reduce(&ode.matrix()[(i, j)]);
            if e.is_zero() {
                continue;
            }
            let den = e.denom();
            if den.coeff(0).is_zero() {
                first_kind = false;
                diagnostics.push(format!("entry ({i}, {j}) has a pole at Q = 0"));
            }
            if !gcd_rational(den, &den.derivative()).is_constant() {
                simple_poles = false;
                diagnostics.push(format!("entry ({i}, {j}) has a multiple pole: den = {}", fmt_q(den)));
            }
        }
    }
    if !first_kind {
        diagnostics.push(if n == 1 {
            "Q = 0 is an irregular singularity".to_string()
        } else {
            "B̃ is not of the first kind at Q = 0; treated as irregular".to_string()
        });
    }
    let mut eigenvalues = Vec::new();
    let mut non_resonant = first_kind;
    if first_kind {
        let b0 = c64(ode.taylor(0).expect("first kind").coeff(0));
        let (lambdas, _) = eigen_decomposition(&b0);
        for a in &lambdas {
            for b in &lambdas {
                let d = a - b;
                let r = d.re.round();
                if r != 0.0 && (d - Complex64::new(r, 0.0)).norm() <= INTEGER_GAP_TOL {
                    non_resonant = false;
                }
            }
        }
        if !non_resonant {
            diagnostics.push("eigenvalues of B̃(0) differ by a nonzero integer".into());
        }
        eigenvalues = lambdas.iter().map(|z| (z.re, z.im)).collect();
    }
    RegularityCheck { ok: first_kind && simple_poles && non_resonant, first_kind, simple_poles, non_resonant, eigenvalues, diagnostics }
}

/// Condition 1 on the poles of `B` at `q0`.
pub fn spiral_separation(df: &DeltaForm<RationalFunctionQ>, q0: Complex64) -> SpiralCheck {
    let poles = df.poles_at(q0);
    let mut witness_pairs = Vec::new();
    for i in 0..poles.len() {
        for j in (i + 1)..poles.len() {
            let (a, b) = (poles[i].value, poles[j].value);
            if a.norm() > 1e-14 && b.norm() > 1e-14 && spiral_contains(a, q0, b, SPIRAL_TOL) {
                witness_pairs.push((i, j));
            }
        }
    }
    SpiralCheck {
        ok: witness_pairs.is_empty(),
        poles: poles.iter().map(|p| (p.value.re, p.value.im, p.multiplicity)).collect(),
        witness_pairs,
    }
}

enum Structure {
    Semisimple { lambdas: Vec<Complex64>, anchors: Vec<usize> },
    SingleBlock { cyclic: usize },
    Scalar,
}

fn nilpotent_part(b: &Mat<Complex64>) -> (Mat<Complex64>, bool) {
    let n = b.rows();
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..n {
        tr += b[(i, i)];
    }
    let nil = b.sub(&Mat::identity(n).scale(&(tr / n as f64)));
    let mut pw = Mat::identity(n);
    for _ in 0..n {
        pw = pw.mul(&nil);
    }
    let is_nil = max_norm(&pw) <= EIGEN_CLUSTER_TOL * (1.0 + max_norm(b)).powi(n as i32);
    (nil, is_nil)
}

fn classify(b: &Mat<Complex64>) -> Result<Structure, String> {
    let n = b.rows();
    let scale = 1.0 + max_norm(b);
    let (nil, single) = nilpotent_part(b);
    if single {
        if max_norm(&nil) <= EIGEN_CLUSTER_TOL * scale {
            return Ok(Structure::Scalar);
        }
        let mut top = Mat::identity(n);
        for _ in 0..n - 1 {
            top = top.mul(&nil);
        }
        return match (0..n).find(|&k| top.column(k).iter().any(|z| z.norm() > EIGEN_CLUSTER_TOL * scale)) {
            Some(cyclic) => Ok(Structure::SingleBlock { cyclic }),
            None => Err("single eigenvalue with several Jordan blocks".into()),
        };
    }
    let (lambdas, v) = eigen_decomposition(b);
    for i in 0..n {
        for j in 0..i {
            if (lambdas[i] - lambdas[j]).norm() <= EIGEN_CLUSTER_TOL * scale {
                return Err("repeated eigenvalue alongside distinct ones".into());
            }
        }
    }
    let anchors = (0..n)
        .map(|k| {
            let col = v.column(k);
            let m = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
            col.iter().position(|z| z.norm() > 1e-8 * m).expect("nonzero eigenvector")
        })
        .collect();
    Ok(Structure::Semisimple { lambdas, anchors })
}

fn basis(b: &Mat<Complex64>, s: &Structure) -> Option<Mat<Complex64>> {
    let n = b.rows();
    match s {
        Structure::Scalar => {
            let (nil, _) = nilpotent_part(b);
            (max_norm(&nil) <= 1e-12 * (1.0 + max_norm(b))).then(|| Mat::identity(n))
        }
        Structure::SingleBlock { cyclic } => {
            let (nil, is_nil) = nilpotent_part(b);
            if !is_nil {
                return None;
            }
            let mut cols = vec![vec![Complex64::new(0.0, 0.0); n]; n];
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[*cyclic] = Complex64::new(1.0, 0.0);
            for k in (0..n).rev() {
                cols[k] = v.clone();
                v = nil.mul_vec(&v);
            }
            Some(Mat::from_fn(n, n, |i, j| cols[j][i]))
        }
        Structure::Semisimple { lambdas, anchors } => {
            let (mu, v) = eigen_decomposition(b);
            let mut used = vec![false; n];
            let mut out = Mat::zeros(n, n);
            for (k, l) in lambdas.iter().enumerate() {
                let j = (0..n)
                    .filter(|&j| !used[j])
                    .min_by(|&a, &c| (mu[a] - l).norm().total_cmp(&(mu[c] - l).norm()))?;
                used[j] = true;
                let col = v.column(j);
                let a = col[anchors[k]];
                if a.norm() == 0.0 {
                    return None;
                }
                for i in 0..n {
                    out[(i, k)] = col[i] / a;
                }
            }
            Some(out)
        }
    }
}

fn b0_at(sys: &QDifferenceSystem<RationalFunctionQ>, q: &QValue) -> Option<Mat<Complex64>> {
    let s = sys.specialize(q.q())?;
    let a0 = s.taylor(0).ok()?.coeff(0).clone();
    let h = q.q() - 1.0;
    Some(a0.sub(&Mat::identity(a0.rows())).scale(&(1.0 / h)))
}

/// Condition 4 along `q0^t` for `t = 2^{−4}, …, 2^{−12}`.
pub fn jordan_convergence(
    sys: &QDifferenceSystem<RationalFunctionQ>,
    limit: Option<&ODESystem<BigRational>>,
    q0: Complex64,
) -> JordanCheck {
    let fail = |msg: &str, distances: Vec<(f64, f64)>| JordanCheck {
        ok: false,
        normalization: JORDAN_NORMALIZATION,
        distances,
        diagnostics: vec![msg.to_string()],
    };
    let Some(limit) = limit else {
        return fail("no limit system", Vec::new());
    };
    let Ok(t0) = limit.taylor(0) else {
        return fail("B̃(0) is undefined: pole at Q = 0", Vec::new());
    };
    let bt = c64(t0.coeff(0));
    let structure = match classify(&bt) {
        Ok(s) => s,
        Err(e) => return fail(&e, Vec::new()),
    };
    let reference = basis(&bt, &structure).expect("limit basis");
    let mut distances = Vec::new();
    for &t in TSchedule::halvings(4, 12).ts() {
        let q = match QPath::new(q0, t) {
            Ok(p) => p.q(),
            Err(e) => return fail(&e.to_string(), distances),
        };
        let d = b0_at(sys, &q).and_then(|b| basis(&b, &structure)).map_or(f64::INFINITY, |p| max_norm(&p.sub(&reference)));
        distances.push((t, d));
    }
    let tol = 1e-2 * (1.0 + max_norm(&reference));
    let n = distances.len();
    let (last, prev) = (distances[n - 1].1, distances[n - 2].1);
    let ok = distances.iter().all(|(_, d)| d.is_finite()) && last <= tol && (last <= 1e-9 || last <= 0.75 * prev);
    let diagnostics = if ok { Vec::new() } else { vec!["Jordan bases do not settle along q0^t".to_string()] };
    JordanCheck { ok, normalization: JORDAN_NORMALIZATION, distances, diagnostics }
}

/// Run all four conditions.
pub fn check_confluent(sys: &QDifferenceSystem<RationalFunctionQ>, q0: Complex64) -> ConfluenceResult<ConfluenceReport> {
    QValue::new(q0)?;
    let df = delta_form(sys)?;
    let spiral = spiral_separation(&df, q0);
    let (limit_check, limit) = limit_of_delta_form(&df);
    let regular = match &limit {
        Some(ode) => regularity(ode),
        None => RegularityCheck {
            ok: false,
            first_kind: false,
            simple_poles: false,
            non_resonant: false,
            eigenvalues: Vec::new(),
            diagnostics: vec!["no limit system".into()],
        },
    };
    let jordan = jordan_convergence(sys, limit.as_ref(), q0);
    Ok(ConfluenceReport {
        confluent: spiral.ok && limit_check.ok && regular.ok && jordan.ok,
        q0: (q0.re, q0.im),
        spiral_separation: spiral,
        limit_exists: limit_check,
        limit_regular_singular: regular,
        jordan_basis_converges: jordan,
        limit_system: limit,
    })
}
