//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` cannot hold as stated; they are
//! evaluated literally, reported as FAIL, and printed with the statement that
//! does hold. Every other criterion must pass, and every listed one must still
//! fail, so the list cannot go stale.

use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64 as C;
use num_rational::BigRational;
use qonf_confluence::monodromy::singularities;
use qonf_cli::verify::{random_equivariant_specs, random_points, random_qhg_specs, shift_grid};
use qonf_confluence::{
    birkhoff_limit, birkhoff_limit_formula, branch_distance, builtin, gaussian, gaussian_to_c64, limit_solution_along_path,
    monodromy_exponents, monodromy_poly, root_taylor, solution_limit, PathLimit, TSchedule,
};
use qonf_gw::{
    confluence_compare, equivariant_confluence_compare, jcoh_ode_residual, jk_closed_formula, jk_equivariant, jk_qde_residual,
    jk_series, nd_recursion, p2_table, potential_from_counts, wdvv_residual, wdvv_residual_p2, EquivariantSpec,
};
use qonf_qdiff::{casorati_matrix, frobenius_solution, qhg_bases, qhg_series, QHypergeometricSpec, ScalarQOperator};
use qonf_qspecial::{
    jacobi_triple_product_check, log_off_spiral, log_q_character, q_log, qpoch_infinite, spiral_residual, theta, QValue,
    POLE_TOL,
};
use qonf_rings::par::Exec;
use qonf_rings::{qfactorial, rat, RationalFunctionQ as R, Scalar};

const KNOWN_FAILURES: [usize; 2] = [5, 11];
const SEED: u64 = qonf_cli::args::DEFAULT_SEED;

struct Verdict {
    passed: bool,
    detail: String,
    /// The statement that holds in place of a known failure.
    diagnostic: Option<String>,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into(), diagnostic: None }
}

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn q0() -> C {
    c(0.5, 0.5)
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm()
}

fn one() -> BigRational {
    rat(1, 1)
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let t = nd_recursion(8).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let want: [i64; 8] = [1, 1, 12, 620, 87304, 26312976, 14616808192, 13525751027392];
    let exact = t.values().iter().zip(want).all(|(a, b)| *a == BigInt::from(b)) && t.values().len() == 8;
    verdict(exact && secs < 1.0, format!("N_1..N_8 exact: {exact}; {secs:.3} s"))
}

fn criterion_2() -> Verdict {
    let zero = wdvv_residual_p2(4).unwrap().is_zero();
    let counts = nd_recursion(4).unwrap().as_rationals();
    let mut first_orders = Vec::new();
    let mut ok = zero;
    for d in 1..=4usize {
        let mut bad = counts.clone();
        bad[d - 1] += one();
        let res = wdvv_residual(&potential_from_counts(&bad, 4));
        match res.lowest_term() {
            Some((m, _)) => {
                // N_d first enters the recursion at E^max(d,2) t2^(3d−4).
                let want = [0, 0, (3 * d.max(2) - 4) as u32, d.max(2) as u32];
                ok &= m == want;
                first_orders.push(format!("N_{d}: E^{} t2^{}", m[3], m[2]));
            }
            None => {
                ok = false;
                first_orders.push(format!("N_{d}: undetected"));
            }
        }
    }
    verdict(ok, format!("zero through E^4: {zero}; perturbations break at {}", first_orders.join(", ")))
}

fn criterion_3() -> Verdict {
    let tol = 1e-10;
    let lambda = c(0.35, -0.6);
    let (mut th, mut ch, mut lg) = (0.0f64, 0.0f64, 0.0f64);
    for (q, z) in shift_grid() {
        th = th.max(rel(theta(&q, q.q() * z, 1e-16).unwrap() * z, theta(&q, z, 1e-16).unwrap()));
        let e = |x: C| log_q_character(lambda, &q, x, POLE_TOL).unwrap().exp();
        ch = ch.max(rel(e(q.q() * z), lambda * e(z)));
        let l0 = q_log(&q, z).unwrap() + 1.0;
        lg = lg.max((q_log(&q, q.q() * z).unwrap() - l0).norm() / l0.norm().max(1.0));
    }
    let jtp = random_points(SEED, 10).into_iter().map(|(q, z)| jacobi_triple_product_check(&q, z, 1e-17).unwrap()).fold(0.0, f64::max);
    let worst = th.max(ch).max(lg).max(jtp);
    verdict(
        worst < tol,
        format!("θ {th:.1e}, e {ch:.1e}, ℓ {lg:.1e} on 25 points; triple product {jtp:.1e} on 10 points"),
    )
}

fn path_limit(f: impl Fn(&QValue) -> C + Sync, big_q: C, excluded: &[C]) -> PathLimit<C> {
    limit_solution_along_path(|q: &QValue| Ok(f(q)), q0(), big_q, excluded, &TSchedule::default(), Exec::default()).unwrap()
}

fn criterion_4() -> Verdict {
    let mut exact = true;
    let mut fact = one();
    for d in 0..=12usize {
        if d > 0 {
            fact *= rat(d as i64, 1);
        }
        let x = &(&R::one() - &R::q()).pow(d) * &qfactorial(d).inv().unwrap();
        exact &= x.limit_q_to_1().unwrap() == fact.recip();
    }
    let mut worst = 0.0f64;
    let mut orders = Vec::new();
    for x in [0.1, 0.3, 0.5] {
        let big_q = c(x, 0.0);
        let lim = path_limit(|q| 1.0 / qpoch_infinite((1.0 - q.q()) * big_q, q, 1e-17), big_q, &[]);
        worst = worst.max((lim.value - x.exp()).norm());
        orders.push(lim.observed_order.unwrap_or(f64::NAN));
    }
    let order_ok = orders.iter().all(|p| (p - 1.0).abs() < 0.3);
    verdict(exact && worst < 1e-6 && order_ok, format!("exact d ≤ 12: {exact}; e^Q error {worst:.1e}, orders {orders:.3?}"))
}

fn criterion_5() -> Verdict {
    let tol = 1e-4;
    let big_qs = [c(2.0, 0.0), c(0.6, 0.8), c(-0.3, 1.4)];
    let mus = [c(0.5, 0.0), c(-1.0, 0.0), c(2.0, 1.0)];
    let mut literal = 0.0f64;
    let mut plus = 0.0f64;
    for z in big_qs {
        assert!(spiral_residual(c(-1.0, 0.0), q0(), z) > 1e-3 && spiral_residual(c(-1.0, 0.0), q0(), -z) > 1e-3);
        let log_z = log_off_spiral(z, q0());
        for (arg, target, acc) in [(-z, z.ln(), &mut literal), (z, log_z, &mut plus)] {
            let lim = path_limit(|q| (q.q() - 1.0) * q_log(q, arg).unwrap(), z, &[c(-1.0, 0.0)]);
            *acc = acc.max((lim.value - target).norm() / target.norm().max(1.0));
        }
        for mu in mus {
            let f = |arg: C| move |q: &QValue| log_q_character(q.powc(mu), q, arg, POLE_TOL).unwrap().exp();
            // Literal: e_{q,q^μ}(−Q) → Q^μ, any branch of Q^μ.
            let lim = path_limit(f(-z), z, &[c(-1.0, 0.0)]);
            let best = (-4..=4)
                .map(|k| rel(lim.value, (mu * (z.ln() + c(0.0, 2.0 * std::f64::consts::PI * k as f64))).exp()))
                .fold(f64::INFINITY, f64::min);
            literal = literal.max(best);
            let lim = path_limit(f(z), z, &[c(-1.0, 0.0)]);
            plus = plus.max(rel(lim.value, (mu * log_z).exp()));
        }
    }
    Verdict {
        passed: literal < tol,
        detail: format!("argument −Q: worst error {literal:.3e} over every branch (tol {tol:.0e})"),
        diagnostic: Some(format!(
            "argument +Q: (q−1)ℓ_q(Q) → log Q and e_{{q,q^μ}}(Q) → Q^μ within {plus:.1e}; the −Q form differs by the branch factor of (−1)"
        )),
    }
}

fn criterion_6() -> Verdict {
    let ok = (0..=4).all(|n| (0..=8).all(|d| jk_closed_formula(n, d).unwrap() == jk_series(n, d).unwrap()));
    verdict(ok, "jk_closed_formula = jk_series for all N ≤ 4, D ≤ 8")
}

fn criterion_7() -> Verdict {
    let mut exact = true;
    for n in 0..=4usize {
        for d in 1..=8usize {
            exact &= jk_qde_residual(n, d).unwrap().is_zero_through(d - 1);
            exact &= jcoh_ode_residual(n, d, &one()).unwrap().is_zero_through(d - 1);
        }
    }
    let q = QValue::new(c(0.3, 0.4)).unwrap();
    let mut worst = 0.0f64;
    for spec in random_equivariant_specs(SEED, 3) {
        let j = jk_equivariant(&spec, &q, 40).unwrap();
        for z in [c(0.3, 0.1), c(-0.2, 0.4)] {
            for i in 0..=spec.n() {
                worst = worst.max(j.residual(i, z).unwrap());
            }
        }
    }
    verdict(exact && worst < 1e-8, format!("exact residuals zero: {exact}; equivariant residual {worst:.1e} on 3 seeded specs"))
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let mut exact = true;
    let mut checked = 0;
    for n in 0..=4usize {
        let cmp = confluence_compare(n, 6).unwrap();
        exact &= cmp.is_exact();
        checked += cmp.checked;
    }
    let table = p2_table(6).unwrap();
    let secs = start.elapsed().as_secs_f64();
    println!("{}", table.render());
    let ok = exact && table.all_verified() && table.rows.len() == 5 && secs < 60.0;
    verdict(ok, format!("{checked} coefficients equal for N ≤ 4, d ≤ 6; ℙ² table verified; {secs:.2} s"))
}

fn criterion_9() -> Verdict {
    let specs = [
        EquivariantSpec::new(vec![c(0.3, 0.0)], c(1.0, 0.0)).unwrap(),
        EquivariantSpec::new(vec![c(0.0, 0.0), c(0.5, 0.0)], c(1.0, 0.0)).unwrap(),
        EquivariantSpec::new(vec![c(0.0, 0.0), c(0.6, 0.0), c(1.4, 0.0)], c(1.0, 0.0)).unwrap(),
    ];
    let mut worst = 0.0f64;
    let mut orders = Vec::new();
    for spec in &specs {
        for z in [c(0.2, 0.0), c(0.3, 0.2), c(-0.25, 0.35)] {
            let cmp = equivariant_confluence_compare(spec, 4, z, q0(), &TSchedule::default(), Exec::default()).unwrap();
            worst = worst.max(cmp.max_error());
            orders.extend(cmp.branches.iter().map(|b| b.observed_order.unwrap_or(f64::NAN)));
        }
    }
    let order_ok = orders.iter().all(|p| (p - 1.0).abs() < 0.3);
    let (lo, hi) = orders.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(*p), b.max(*p)));
    verdict(worst < 1e-4 && order_ok, format!("max error {worst:.1e} for N ≤ 2, d ≤ 4, 3 Q; orders in [{lo:.3}, {hi:.3}]"))
}

fn criterion_10() -> Verdict {
    // Exact: normalising gauges and log solutions vanish to truncation.
    let mut exact = true;
    for name in ["pochhammer-raw", "pochhammer-scaled", "irregular"] {
        let sys = builtin(name, 0, &one()).unwrap();
        let nm = sys.normalize_to_constant(6).unwrap();
        let back = sys.gauge_transform_series(&nm.f).unwrap();
        exact &= back.coeff(0) == &nm.a0 && (1..=6).all(|m| back.coeff(m).is_zero());
    }
    for n in 0..=3usize {
        let op = ScalarQOperator::pn(n, R::q());
        exact &= op.frobenius_log_solutions(6).unwrap().iter().all(|s| op.apply_to_log_series(s).unwrap().is_zero_through(6));
    }
    let qr = rat(1, 3);
    let spec = QHypergeometricSpec::new(vec![rat(1, 2), rat(-2, 5)], vec![rat(7, 3)]);
    let s = qhg_series(&spec, &qr, 10).unwrap();
    let coeffs: Vec<BigRational> = (0..=10).map(|m| s.get(m, 0).clone()).collect();
    exact &= spec.operator(&qr).unwrap().apply_to_series(&coeffs).iter().all(Scalar::is_zero);

    // Numeric: builtins at two values of q, then the r = s + 1 family.
    let mut worst = 0.0f64;
    let mut min_det = f64::INFINITY;
    for name in ["pochhammer-raw", "pochhammer-scaled", "irregular"] {
        for q in [q0(), c(0.3, -0.6)] {
            let sys = builtin(name, 0, &one()).unwrap().specialize(q).unwrap();
            let sol = frobenius_solution(&sys, 40).unwrap();
            for z in [c(0.3, 0.1), c(-0.2, 0.25)] {
                worst = worst.max(sol.shift_residual(&sys, z).unwrap());
                min_det = min_det.min(sol.casoratian(z).unwrap().norm());
            }
        }
    }
    let q = QValue::new(c(0.35, 0.15)).unwrap();
    for spec in random_qhg_specs(SEED, &q, 4) {
        let bases = qhg_bases(&spec, &q).unwrap();
        let op = spec.operator(&q.q()).unwrap();
        let kappa = q.q() * spec.b.iter().product::<C>() / spec.a.iter().product::<C>();
        // The basis at ∞ is sampled at q^k·Q, k ≤ r, so |Q| must clear |κ|·|q|^{−r}.
        let far = C::from_polar(4.0 * kappa.norm().max(1.0) / q.q().norm().powi(spec.a.len() as i32), 0.7);
        for (sols, z) in [(&bases.at_zero, c(0.2, 0.1)), (&bases.at_infinity, far)] {
            for y in sols {
                let res = op.apply_numeric(|x| y.eval(&q, x), z).unwrap();
                let mut scale = 0.0f64;
                let mut x = z;
                for _ in 0..=op.order() {
                    scale = scale.max(y.eval(&q, x).unwrap().norm());
                    x *= q.q();
                }
                worst = worst.max(res.norm() / scale);
            }
            min_det = min_det.min(casorati_matrix(sols, &q, z).unwrap().det().unwrap().norm());
        }
    }
    let ok = exact && worst < 1e-8 && min_det > 0.0 && min_det.is_finite();
    verdict(ok, format!("exact residuals zero: {exact}; numeric residual {worst:.1e}; min |Casoratian| {min_det:.1e}"))
}

/// Three sample points in each component of ℂ* minus `{1, i, −1}·q0^ℝ`;
/// every such spiral crosses the unit circle once, so components are unit
/// arcs swept along `q0^ℝ`.
fn component_samples() -> Vec<(usize, Vec<C>)> {
    let arcs = [(0.0, 0.5), (0.5, 1.0), (1.0, 2.0)];
    arcs.iter()
        .enumerate()
        .map(|(k, (a, b))| {
            let pts = [(0.3, 0.0), (0.7, -0.6), (0.5, 0.8)]
                .iter()
                .map(|(s, t)| {
                    let theta = std::f64::consts::PI * (a + s * (b - a));
                    C::from_polar(1.0, theta) * (q0().ln() * t).exp()
                })
                .collect();
            (k, pts)
        })
        .collect()
}

fn criterion_11() -> Verdict {
    let p = monodromy_poly();
    // First-order terms of the roots Q_j and of α_j = 1/Q_j.
    let root1 = [gaussian((-1, 4), (-1, 4)), gaussian((0, 1), (1, 2)), gaussian((1, 4), (-1, 4))];
    let alpha1 = [gaussian((1, 4), (1, 4)), gaussian((0, 1), (1, 2)), gaussian((-1, 4), (1, 4))];
    let taylor_ok = singularities().iter().zip(root1.iter().zip(&alpha1)).all(|(s, (q1, a1))| {
        let r = root_taylor(&p, s).unwrap();
        let a = r.reciprocal();
        &r.r0 == s && &r.r1 == q1 && a.r0 == s.inv() && &a.r1 == a1
    });
    let mu = monodromy_exponents().unwrap();
    let mu_c = [gaussian_to_c64(&mu[0]), gaussian_to_c64(&mu[1]), gaussian_to_c64(&mu[2])];
    let i = c(0.0, 1.0);
    let s = TSchedule::default();

    let mut paper = Vec::new();
    let mut derived = 0.0f64;
    for (k, pts) in component_samples() {
        let mut worst = 0.0f64;
        for z in pts {
            let lim = birkhoff_limit(z, q0(), &s, Exec::default()).unwrap();
            worst = worst.max(branch_distance(lim.value, [-z, -i * z, z], mu_c, 4));
            derived = derived.max(rel(lim.value, birkhoff_limit_formula(z, q0()).unwrap()));
        }
        paper.push((k, worst));
    }
    let birkhoff_ok = paper.iter().all(|(_, w)| *w < 1e-3);
    let paper: Vec<String> = paper.iter().map(|(k, w)| format!("component {k}: {w:.3}")).collect();

    // Solution: the stated product is a solution of the limit equation, so the
    // check is a locally constant ratio; its value at 0 is not 1.
    let stated = |z: C| ((z - 1.0).ln() * mu_c[0] + (z - i).ln() * mu_c[1] + (z + 1.0).ln() * mu_c[2]).exp();
    let mut spread = 0.0f64;
    let mut consts = Vec::new();
    for base in [c(0.4, 0.3), c(-0.5, 0.2), c(0.3, -0.4), c(1.7, 0.9)] {
        let ratios: Vec<C> = [c(0.0, 0.0), c(0.03, 0.0), c(0.0, 0.03)]
            .iter()
            .map(|d| {
                let z = base + d;
                solution_limit(z, q0(), &s, Exec::default()).unwrap().value / stated(z)
            })
            .collect();
        spread = spread.max(ratios.iter().map(|r| rel(*r, ratios[0])).fold(0.0, f64::max));
        consts.push(ratios[0]);
    }
    let solution_ok = spread < 1e-3;
    let c0 = stated(c(0.0, 0.0));
    Verdict {
        passed: taylor_ok && birkhoff_ok && solution_ok,
        detail: format!(
            "root Taylor exact: {taylor_ok}; Birkhoff distance to every branch of (−Q)^μ1(−iQ)^μ2Q^μ3: {} (tol 1e-3); \
             solution ratio spread {spread:.1e}",
            paper.join(", ")
        ),
        diagnostic: Some(format!(
            "Birkhoff limit = (−Q)^μ1 (iQ)^μ2 Q^μ3 within {derived:.1e} on all components; the stated product at Q = 0 is \
             {c0:.4}, so the solution limit (value 1 at 0) equals it up to the constants {:?}",
            consts.iter().map(|z| format!("{z:.4}")).collect::<Vec<_>>()
        )),
    }
}

#[test]
fn acceptance() {
    let criteria: [(usize, fn() -> Verdict); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut unexpected = Vec::new();
    for (k, f) in criteria {
        let v = f();
        let known = KNOWN_FAILURES.contains(&k);
        let tag = match (v.passed, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (listed as known failure)",
        };
        println!("criterion {k}: {tag}: {}", v.detail);
        if let Some(d) = &v.diagnostic {
            println!("    holds instead: {d}");
        }
        if v.passed == known {
            unexpected.push(k);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
