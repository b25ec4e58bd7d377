//! Verification suites. Checks run through `map_collect`; the report is
//! sorted by check name, so output does not depend on scheduling.

use num_bigint::BigInt;
use num_complex::Complex64 as C;
use num_rational::BigRational;
use qonf_confluence::{
    birkhoff_limit, birkhoff_limit_formula, builtin, check_confluent, gaussian, limit_solution_along_path, monodromy_exponents,
    TSchedule,
};
use qonf_gw::{
    confluence_compare, equivariant_confluence_compare, jcoh_ode_residual, jk_closed_formula, jk_equivariant, jk_qde_residual,
    jk_series, nd_recursion, p2_table, small_quantum_rings, wdvv_residual_p2, EquivariantSpec,
};
use qonf_qdiff::{casorati_matrix, frobenius_solution, qhg_bases, QHypergeometricSpec, ScalarQOperator};
use qonf_qspecial::{
    jacobi_triple_product_check, log_q_character, pole_proximity, q_log, qpoch_infinite, theta, QValue, POLE_TOL,
};
use qonf_rings::par::{map_collect, Exec};
use qonf_rings::RationalFunctionQ as R;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::Suite;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol: f64,
    pub limit_tol: f64,
    pub q0: C,
    pub schedule: TSchedule,
    pub exec: Exec,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub suite: &'static str,
    pub passed: bool,
    pub residual: Option<f64>,
    pub detail: String,
    pub summary: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("[{}] {}\n", if c.passed { "pass" } else { "FAIL" }, c.summary));
        }
        out.push_str(&format!("{} of {} checks passed\n", self.checks.iter().filter(|c| c.passed).count(), self.checks.len()));
        out
    }
}

/// Result of one check before naming.
pub struct Outcome {
    pub passed: bool,
    pub residual: Option<f64>,
    pub detail: String,
}

impl Outcome {
    fn residual(r: f64, tol: f64) -> Self {
        Outcome { passed: r < tol, residual: Some(r), detail: format!("residual {r:.3e} (tol {tol:.0e})") }
    }

    fn exact(ok: bool, what: &str) -> Self {
        Outcome { passed: ok, residual: None, detail: if ok { what.to_string() } else { format!("NOT {what}") } }
    }
}

type Job = (String, &'static str, Box<dyn Fn(&VerifyConfig) -> Result<Outcome, String> + Send + Sync>);

fn job<F>(name: impl Into<String>, suite: &'static str, f: F) -> Job
where
    F: Fn(&VerifyConfig) -> Result<Outcome, String> + Send + Sync + 'static,
{
    (name.into(), suite, Box::new(f))
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// The fixed 5×5 `(q, Q)` grid, `|q| ≤ 0.9`.
pub fn shift_grid() -> Vec<(QValue, C)> {
    let qs = [C::new(0.3, 0.4), C::new(-0.5, 0.2), C::new(0.1, -0.7), C::new(0.6, 0.6), C::new(-0.8, -0.3)];
    let big_qs = [C::new(0.7, 0.2), C::new(-1.3, 0.4), C::new(2.1, -1.5), C::new(0.05, 0.3), C::new(-0.4, -2.2)];
    let mut out = Vec::new();
    for q in qs {
        for z in big_qs {
            out.push((QValue::new(q).expect("0 < |q| < 1"), z));
        }
    }
    out
}

/// Seeded sample points `(q, Q)` with `0.1 ≤ |q| ≤ 0.9`.
pub fn random_points(seed: u64, count: usize) -> Vec<(QValue, C)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let q = C::from_polar(rng.random_range(0.1..0.9), rng.random_range(-3.1..3.1));
            let z = C::from_polar(rng.random_range(0.2..3.0), rng.random_range(-3.1..3.1));
            (QValue::new(q).expect("0 < |q| < 1"), z)
        })
        .collect()
}

/// Seeded non-resonant equivariant specs with `N ≤ 2`.
pub fn random_equivariant_specs(seed: u64, count: usize) -> Vec<EquivariantSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe0);
    let mut out = Vec::new();
    while out.len() < count {
        let n1 = rng.random_range(2..=3);
        let lambdas = (0..n1).map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-0.5..0.5))).collect();
        let z = C::new(rng.random_range(0.5..1.5), 0.0);
        if let Ok(s) = EquivariantSpec::new(lambdas, z) {
            if (0..n1).all(|i| (0..n1).all(|j| i == j || (s.delta(i, j) - s.delta(i, j).re.round()).norm() > 0.05)) {
                out.push(s);
            }
        }
    }
    out
}

/// Seeded `r = s + 1` parameter sets away from `q`-lattice resonance.
pub fn random_qhg_specs(seed: u64, q: &QValue, count: usize) -> Vec<QHypergeometricSpec<C>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e);
    let h = q.log();
    let far = |x: C| {
        let k = (x.norm().ln() / h.re).round() as i64;
        (k - 2..=k + 2).all(|j| (x - (h * j as f64).exp()).norm() > 1e-2 * x.norm())
    };
    let mut out = Vec::new();
    while out.len() < count {
        let r = rng.random_range(1..=3usize);
        let mut p = || C::from_polar(rng.random_range(0.3..2.5), rng.random_range(-3.1..3.1));
        let a: Vec<C> = (0..r).map(|_| p()).collect();
        let b: Vec<C> = (0..r - 1).map(|_| p()).collect();
        let mut lower = vec![q.q()];
        lower.extend(b.iter().copied());
        let ok = (0..r).all(|i| (0..i).all(|j| far(a[i] / a[j])))
            && (0..lower.len()).all(|i| (0..i).all(|j| far(lower[i] / lower[j])));
        if ok {
            out.push(QHypergeometricSpec::new(a, b));
        }
    }
    out
}

fn qspecial_jobs() -> Vec<Job> {
    const S: &str = "qspecial";
    vec![
        job("theta shift law (5x5 grid)", S, |cfg| {
            let mut worst = 0.0f64;
            for (q, z) in shift_grid() {
                let a = theta(&q, q.q() * z, 1e-16).map_err(|e| e.to_string())? * z;
                worst = worst.max(rel(a, theta(&q, z, 1e-16).map_err(|e| e.to_string())?));
            }
            Ok(Outcome::residual(worst, cfg.tol))
        }),
        job("q-character shift law (5x5 grid)", S, |cfg| {
            let lambda = C::new(0.35, -0.6);
            let mut worst = 0.0f64;
            for (q, z) in shift_grid() {
                let a = log_q_character(lambda, &q, q.q() * z, POLE_TOL).map_err(|e| e.to_string())?.exp();
                let b = lambda * log_q_character(lambda, &q, z, POLE_TOL).map_err(|e| e.to_string())?.exp();
                worst = worst.max(rel(a, b));
            }
            Ok(Outcome::residual(worst, cfg.tol))
        }),
        job("q-log shift law (5x5 grid)", S, |cfg| {
            let mut worst = 0.0f64;
            for (q, z) in shift_grid() {
                let a = q_log(&q, q.q() * z).map_err(|e| e.to_string())?;
                let b = q_log(&q, z).map_err(|e| e.to_string())? + 1.0;
                worst = worst.max((a - b).norm() / b.norm().max(1.0));
            }
            Ok(Outcome::residual(worst, cfg.tol))
        }),
        job("jacobi triple product (10 points)", S, |cfg| {
            let mut worst = 0.0f64;
            for (q, z) in random_points(cfg.seed, 10) {
                worst = worst.max(jacobi_triple_product_check(&q, z, 1e-17).map_err(|e| e.to_string())?);
            }
            Ok(Outcome::residual(worst, cfg.tol))
        }),
        job("pochhammer recursion (10 points)", S, |cfg| {
            let mut worst = 0.0f64;
            for (q, a) in random_points(cfg.seed.wrapping_add(1), 10) {
                if pole_proximity(&q, a).1 < 1e-3 {
                    continue;
                }
                let lhs = (1.0 - a) * qpoch_infinite(q.q() * a, &q, 1e-17);
                let rhs = qpoch_infinite(a, &q, 1e-17);
                worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1e-3));
            }
            Ok(Outcome::residual(worst, cfg.tol))
        }),
    ]
}

fn qdiff_jobs() -> Vec<Job> {
    const S: &str = "qdiff";
    let mut jobs = Vec::new();
    for name in ["pochhammer-raw", "pochhammer-scaled", "irregular", "pn-j"] {
        jobs.push(job(format!("frobenius {name}"), S, move |cfg| {
            let sys = builtin(name, 2, &BigRational::from_integer(BigInt::from(1))).map_err(|e| e.to_string())?;
            let num = sys.specialize(cfg.q0).ok_or("pole at q0")?;
            let sol = frobenius_solution(&num, 40).map_err(|e| e.to_string())?;
            let mut worst = 0.0f64;
            let mut min_det = f64::INFINITY;
            for z in [C::new(0.3, 0.1), C::new(-0.2, 0.25)] {
                worst = worst.max(sol.shift_residual(&num, z).map_err(|e| e.to_string())?);
                min_det = min_det.min(sol.casoratian(z).map_err(|e| e.to_string())?.norm());
            }
            let mut o = Outcome::residual(worst, 1e-8);
            o.passed &= min_det > 0.0 && min_det.is_finite();
            o.detail += &format!(", |Casoratian| ≥ {min_det:.3e}");
            Ok(o)
        }));
    }
    jobs.push(job("qhg bases r = s + 1 (3 random specs)", S, |cfg| {
        let q = QValue::new(C::new(0.35, 0.15)).map_err(|e| e.to_string())?;
        let z = C::new(0.2, 0.1);
        let mut worst = 0.0f64;
        let mut min_det = f64::INFINITY;
        for spec in random_qhg_specs(cfg.seed, &q, 3) {
            let bases = qhg_bases(&spec, &q).map_err(|e| e.to_string())?;
            let op = spec.operator(&q.q()).map_err(|e| e.to_string())?;
            for y in &bases.at_zero {
                let res = op.apply_numeric(|x| y.eval(&q, x), z).map_err(|e| e.to_string())?;
                let mut scale = 0.0f64;
                let mut x = z;
                for _ in 0..=op.order() {
                    scale = scale.max(y.eval(&q, x).map_err(|e| e.to_string())?.norm());
                    x *= q.q();
                }
                worst = worst.max(res.norm() / scale);
            }
            let det = casorati_matrix(&bases.at_zero, &q, z).and_then(|m| m.det()).map_err(|e| e.to_string())?;
            min_det = min_det.min(det.norm());
        }
        let mut o = Outcome::residual(worst, 1e-8);
        o.passed &= min_det > 0.0 && min_det.is_finite();
        o.detail += &format!(", |Casoratian| ≥ {min_det:.3e}");
        Ok(o)
    }));
    jobs.push(job("pn log solutions N=2 D=6", S, |_| {
        let op = ScalarQOperator::pn(2, R::q());
        let sols = op.frobenius_log_solutions(6).map_err(|e| e.to_string())?;
        let ok = sols.len() == 3 && sols.iter().all(|s| op.apply_to_log_series(s).map(|r| r.is_zero_through(6)).unwrap_or(false));
        Ok(Outcome::exact(ok, "exact zero residual"))
    }));
    jobs
}

fn confluence_jobs() -> Vec<Job> {
    const S: &str = "confluence";
    let one = || BigRational::from_integer(BigInt::from(1));
    let mut jobs = vec![
        job("confluence pochhammer-raw", S, move |cfg| {
            let r = check_confluent(&builtin("pochhammer-raw", 0, &one()).map_err(|e| e.to_string())?, cfg.q0).map_err(|e| e.to_string())?;
            Ok(Outcome::exact(!r.confluent && !r.limit_exists.ok, "not confluent, condition 2 fails"))
        }),
        job("confluence pochhammer-scaled", S, move |cfg| {
            let r = check_confluent(&builtin("pochhammer-scaled", 0, &one()).map_err(|e| e.to_string())?, cfg.q0).map_err(|e| e.to_string())?;
            Ok(Outcome::exact(r.confluent, "confluent"))
        }),
        job("confluence irregular", S, move |cfg| {
            let r = check_confluent(&builtin("irregular", 0, &one()).map_err(|e| e.to_string())?, cfg.q0).map_err(|e| e.to_string())?;
            Ok(Outcome::exact(r.limit_exists.ok && !r.limit_regular_singular.ok, "limit exists, condition 3 fails"))
        }),
        job("pochhammer limit e^Q", S, |cfg| {
            let mut worst = 0.0f64;
            let mut orders = Vec::new();
            for x in [0.1, 0.3, 0.5] {
                let big_q = C::new(x, 0.0);
                let lim = limit_solution_along_path(
                    |q: &QValue| Ok(1.0 / qpoch_infinite((1.0 - q.q()) * big_q, q, 1e-17)),
                    cfg.q0,
                    big_q,
                    &[],
                    &cfg.schedule,
                    Exec::Sequential,
                )
                .map_err(|e| e.to_string())?;
                worst = worst.max((lim.value - x.exp()).norm());
                orders.push(lim.observed_order.unwrap_or(f64::NAN));
            }
            let mut o = Outcome::residual(worst, 1e-6);
            o.passed &= orders.iter().all(|p| (p - 1.0).abs() < 0.3);
            o.detail += &format!(", orders {orders:.3?}");
            Ok(o)
        }),
        job("monodromy root taylor", S, |_| {
            let mu = monodromy_exponents().map_err(|e| e.to_string())?;
            let want = [gaussian((1, 4), (1, 4)), gaussian((-1, 2), (0, 1)), gaussian((1, 4), (-1, 4))];
            Ok(Outcome::exact(mu == want, "μ = ((1+i)/4, −1/2, (1−i)/4) exactly"))
        }),
        job("monodromy birkhoff limit", S, |cfg| {
            let mut worst = 0.0f64;
            for z in [C::new(0.4, 0.3), C::new(-0.5, 0.2), C::new(1.7, 0.9)] {
                let p = birkhoff_limit(z, cfg.q0, &cfg.schedule, Exec::Sequential).map_err(|e| e.to_string())?;
                let f = birkhoff_limit_formula(z, cfg.q0).map_err(|e| e.to_string())?;
                worst = worst.max(rel(p.value, f));
            }
            Ok(Outcome::residual(worst, cfg.limit_tol))
        }),
    ];
    for n in 1..=3usize {
        jobs.push(job(format!("confluence pn-j N={n}"), S, move |cfg| {
            let r = check_confluent(&builtin("pn-j", n, &one()).map_err(|e| e.to_string())?, cfg.q0).map_err(|e| e.to_string())?;
            Ok(Outcome::exact(r.confluent, "confluent"))
        }));
    }
    jobs
}

fn gw_exact_jobs() -> Vec<Job> {
    const S: &str = "gw-exact";
    let mut jobs = vec![
        job("nd_recursion d≤8", S, |_| {
            let want: [u64; 8] = [1, 1, 12, 620, 87304, 26312976, 14616808192, 13525751027392];
            let t = nd_recursion(8).map_err(|e| e.to_string())?;
            Ok(Outcome::exact(t.values().iter().zip(want).all(|(a, b)| *a == BigInt::from(b)), "N_1..N_8 reproduced"))
        }),
        job("wdvv_residual order 4", S, |_| {
            Ok(Outcome::exact(wdvv_residual_p2(4).map_err(|e| e.to_string())?.is_zero(), "identically zero"))
        }),
        job("p2_table D=6", S, |_| Ok(Outcome::exact(p2_table(6).map_err(|e| e.to_string())?.all_verified(), "all rows verified"))),
        job("small quantum rings N≤5", S, |_| Ok(Outcome::exact((0..=5).all(|n| small_quantum_rings(n).all()), "relations hold"))),
    ];
    for n in 0..=4usize {
        jobs.push(job(format!("jk_closed_formula N={n} D=8"), S, move |_| {
            let ok = jk_closed_formula(n, 8).map_err(|e| e.to_string())? == jk_series(n, 8).map_err(|e| e.to_string())?;
            Ok(Outcome::exact(ok, "equals jk_series"))
        }));
        jobs.push(job(format!("jk_qde_residual N={n} D=8"), S, move |_| {
            let ok = jk_qde_residual(n, 8).map_err(|e| e.to_string())?.is_zero_through(7);
            Ok(Outcome::exact(ok, "zero through Q^7"))
        }));
        jobs.push(job(format!("jcoh_ode_residual N={n} D=8"), S, move |_| {
            let z = BigRational::from_integer(BigInt::from(1));
            let ok = jcoh_ode_residual(n, 8, &z).map_err(|e| e.to_string())?.is_zero_through(7);
            Ok(Outcome::exact(ok, "zero through Q^7"))
        }));
        jobs.push(job(format!("confluence_compare N={n} D=6"), S, move |_| {
            let c = confluence_compare(n, 6).map_err(|e| e.to_string())?;
            Ok(Outcome::exact(c.is_exact(), "exact match"))
        }));
    }
    jobs
}

fn gw_equivariant_jobs() -> Vec<Job> {
    const S: &str = "gw-equivariant";
    let mut jobs = Vec::new();
    for k in 0..3usize {
        jobs.push(job(format!("equivariant residual spec {k}"), S, move |cfg| {
            let spec = random_equivariant_specs(cfg.seed, 3).swap_remove(k);
            let q = QValue::new(C::new(0.3, 0.4)).map_err(|e| e.to_string())?;
            let j = jk_equivariant(&spec, &q, 40).map_err(|e| e.to_string())?;
            let mut worst = 0.0f64;
            let mut min_det = f64::INFINITY;
            for z in [C::new(0.3, 0.1), C::new(-0.2, 0.4)] {
                for i in 0..=spec.n() {
                    worst = worst.max(j.residual(i, z).map_err(|e| e.to_string())?);
                }
                min_det = min_det.min(j.casoratian(z).map_err(|e| e.to_string())?.norm());
            }
            let mut o = Outcome::residual(worst, 1e-8);
            o.passed &= min_det > 0.0 && min_det.is_finite();
            o.detail += &format!(", |Casoratian| ≥ {min_det:.3e}");
            Ok(o)
        }));
    }
    for n in 1..=2usize {
        jobs.push(job(format!("equivariant_confluence_compare N={n} D=4"), S, move |cfg| {
            let lambdas = (0..=n).map(|i| C::new(0.5 * i as f64 + 0.1 * (i * i) as f64, 0.0)).collect();
            let spec = EquivariantSpec::new(lambdas, C::new(1.0, 0.0)).map_err(|e| e.to_string())?;
            let mut worst = 0.0f64;
            let mut orders = Vec::new();
            for z in [C::new(0.2, 0.0), C::new(0.3, 0.2), C::new(-0.25, 0.35)] {
                let c = equivariant_confluence_compare(&spec, 4, z, cfg.q0, &cfg.schedule, Exec::Sequential).map_err(|e| e.to_string())?;
                worst = worst.max(c.max_error());
                orders.extend(c.branches.iter().map(|b| b.observed_order.unwrap_or(f64::NAN)));
            }
            let mut o = Outcome::residual(worst, cfg.limit_tol);
            o.passed &= orders.iter().all(|p| (p - 1.0).abs() < 0.3);
            Ok(o)
        }));
    }
    jobs
}

fn suite_jobs(suite: Suite) -> Vec<Job> {
    match suite {
        Suite::Qspecial => qspecial_jobs(),
        Suite::Qdiff => qdiff_jobs(),
        Suite::Confluence => confluence_jobs(),
        Suite::GwExact => gw_exact_jobs(),
        Suite::GwEquivariant => gw_equivariant_jobs(),
        Suite::All => [qspecial_jobs(), qdiff_jobs(), confluence_jobs(), gw_exact_jobs(), gw_equivariant_jobs()].into_iter().flatten().collect(),
    }
}

pub fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Qspecial => "qspecial",
        Suite::Qdiff => "qdiff",
        Suite::Confluence => "confluence",
        Suite::GwExact => "gw-exact",
        Suite::GwEquivariant => "gw-equivariant",
        Suite::All => "all",
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Report {
    let jobs = suite_jobs(suite);
    let mut checks = map_collect(cfg.exec, jobs, |(name, suite, f)| {
        let o = f(cfg).unwrap_or_else(|e| Outcome { passed: false, residual: None, detail: format!("error: {e}") });
        let summary = format!("{name}: {}", o.detail);
        Check { name, suite, passed: o.passed, residual: o.residual, detail: o.detail, summary }
    });
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = checks.iter().all(|c| c.passed);
    Report { suite: suite_name(suite).into(), seed: cfg.seed, passed, checks }
}
