//! Subcommand bodies. Each returns a [`Rendered`] result or a [`CliError`].

use num_bigint::BigInt;
use num_complex::Complex64 as C;
use num_rational::BigRational;
use qonf_confluence::{
    birkhoff_limit, birkhoff_limit_formula, branch_distance, builtin, check_confluent, gaussian_to_c64, monodromy_exponents,
    solution_limit, solution_limit_formula, MonodromyExample, TSchedule, BUILTIN_NAMES,
};
use qonf_gw::{
    gw_potential_p2, jcoh_series_at, jcoh_z_exponent, jk_equivariant, jk_modified, jk_series, nd_recursion, p2_table,
    potential_from_counts, confluence_compare, wdvv_residual, EquivariantSpec, Potential,
};
use qonf_qdiff::{casorati_matrix, frobenius_solution, parse_system_json, qhg_bases, qhg_sum, ParsedSystem, QDifferenceSystem, QHypergeometricSpec};
use qonf_qspecial::{log_q_character, q_log, theta, QValue, POLE_TOL};
use qonf_rings::json::log_series_to_json;
use qonf_rings::par::Exec;
use qonf_rings::{rational_to_f64, LogSeries, RationalFunctionQ};
use serde_json::{json, Value};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::output::{c_json, Rendered};

fn qvalue(q: C) -> CliResult<QValue> {
    Ok(QValue::new(q)?)
}

fn schedule(s: &ScheduleArgs) -> CliResult<TSchedule> {
    if s.kmin < 0 || s.kmax < s.kmin + 2 {
        return Err(CliError::Usage(format!("need 0 ≤ kmin and kmax ≥ kmin + 2, got {}..{}", s.kmin, s.kmax)));
    }
    Ok(TSchedule::halvings(s.kmin, s.kmax))
}

pub fn nd(a: &NdArgs) -> CliResult<Rendered> {
    if a.dmax < 1 {
        return Err(CliError::Usage(format!("--dmax must be at least 1, got {}", a.dmax)));
    }
    let t = nd_recursion(a.dmax as usize)?;
    let rows: Vec<Vec<String>> = t.rows().map(|(d, v)| vec![d.to_string(), v.to_string()]).collect();
    let text = rows.iter().map(|r| format!("N_{} = {}\n", r[0], r[1])).collect();
    let json = Value::Array(t.values().iter().map(|v| Value::String(v.to_string())).collect());
    Ok(Rendered::json(json).with_csv(&["d", "N_d"], rows).with_text(text).default_format(Format::Csv))
}

fn potential_rows(p: &Potential) -> Vec<Vec<String>> {
    p.terms().map(|(m, c)| vec![m[0].to_string(), m[1].to_string(), m[2].to_string(), m[3].to_string(), c.to_string()]).collect()
}

fn potential_json(p: &Potential) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!({"t0": m[0], "t1": m[1], "t2": m[2], "E": m[3], "coeff": c.to_string()}))
            .collect(),
    )
}

pub fn potential(a: &PotentialArgs) -> CliResult<Rendered> {
    let f = gw_potential_p2(a.order)?;
    let text = f
        .terms()
        .map(|(m, c)| format!("{c} · t0^{} t1^{} t2^{} E^{}\n", m[0], m[1], m[2], m[3]))
        .collect();
    Ok(Rendered::json(potential_json(&f)).with_csv(&["t0", "t1", "t2", "E", "coeff"], potential_rows(&f)).with_text(text))
}

fn parse_perturb(s: &str) -> CliResult<(usize, BigRational)> {
    let (d, v) = s.split_once(':').ok_or_else(|| CliError::Usage(format!("--perturb expects d:value, got `{s}`")))?;
    let d: usize = d.trim().parse().map_err(|_| CliError::Usage(format!("bad degree in `{s}`")))?;
    let v = crate::parse::parse_rational(v).map_err(CliError::Usage)?;
    if d == 0 {
        return Err(CliError::Usage("degrees start at 1".into()));
    }
    Ok((d, v))
}

pub fn wdvv(a: &WdvvArgs) -> CliResult<Rendered> {
    let order = a.order.max(1);
    let mut counts = nd_recursion(order as usize)?.as_rationals();
    for p in &a.perturb {
        let (d, v) = parse_perturb(p)?;
        if d > counts.len() {
            return Err(CliError::Usage(format!("degree {d} exceeds --order {order}")));
        }
        counts[d - 1] = v;
    }
    let res = wdvv_residual(&potential_from_counts(&counts, order));
    let lowest = res.lowest_term().map(|(m, c)| json!({"t0": m[0], "t1": m[1], "t2": m[2], "E": m[3], "coeff": c.to_string()}));
    let zero = res.is_zero();
    let json = json!({"order": order, "zero": zero, "lowest_term": lowest, "terms": potential_json(&res)});
    let text = if zero {
        format!("WDVV residual vanishes through E^{order}\n")
    } else {
        format!("WDVV residual nonzero; lowest term {}\n", lowest.clone().unwrap_or(Value::Null))
    };
    Ok(Rendered::json(json).with_text(text).fail_if(!zero, "WDVV residual is nonzero"))
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn shift_report(name: &str, value: C, residual: f64, tol: f64) -> Rendered {
    let passed = residual < tol;
    let json = json!({"function": name, "value": c_json(value), "shift_residual": residual, "tol": tol, "passed": passed});
    Rendered::json(json)
        .with_text(format!("{name} = {value}\nshift residual {residual:.3e} (tol {tol:.0e})\n"))
        .fail_if(!passed, format!("{name} shift residual {residual:.3e} exceeds {tol:.0e}"))
}

pub fn theta_cmd(a: &ThetaArgs) -> CliResult<Rendered> {
    let q = qvalue(a.q)?;
    let v = theta(&q, a.big_q, 1e-16)?;
    let r = rel(theta(&q, q.q() * a.big_q, 1e-16)? * a.big_q, v);
    Ok(shift_report("theta", v, r, a.tol))
}

pub fn qlog_cmd(a: &ThetaArgs) -> CliResult<Rendered> {
    let q = qvalue(a.q)?;
    let v = q_log(&q, a.big_q)?;
    let w = q_log(&q, q.q() * a.big_q)?;
    let r = (w - v - 1.0).norm() / v.norm().max(1.0);
    Ok(shift_report("q_log", v, r, a.tol))
}

pub fn qchar_cmd(a: &QcharArgs) -> CliResult<Rendered> {
    let q = qvalue(a.q)?;
    let lv = log_q_character(a.lambda, &q, a.big_q, POLE_TOL)?;
    let lw = log_q_character(a.lambda, &q, q.q() * a.big_q, POLE_TOL)?;
    let r = rel(lw.exp(), a.lambda * lv.exp());
    Ok(shift_report("q_character", lv.exp(), r, a.tol))
}

pub fn qhg(a: &QhgArgs) -> CliResult<Rendered> {
    let q = qvalue(a.q)?;
    let spec = QHypergeometricSpec::new(a.a.clone(), a.b.clone());
    let sum = qhg_sum(&spec, &q, a.big_q)?;
    let mut json = json!({"r": a.a.len(), "s": a.b.len(), "exponent": spec.exponent(), "value": c_json(sum)});
    let mut text = format!("qhg = {sum}\n");
    if a.a.len() == a.b.len() + 1 {
        let bases = qhg_bases(&spec, &q)?;
        // Each basis converges on its own side of the unit circle; the other is reported as null.
        for (key, label, sols) in [("casoratian_at_zero", "0", &bases.at_zero), ("casoratian_at_infinity", "∞", &bases.at_infinity)] {
            match casorati_matrix(sols, &q, a.big_q).and_then(|m| m.det()) {
                Ok(det) => {
                    json[key] = c_json(det);
                    text += &format!("Casoratian at {label}: {det}\n");
                }
                Err(e) => {
                    json[key] = Value::Null;
                    text += &format!("Casoratian at {label}: unavailable ({e})\n");
                }
            }
        }
    }
    Ok(Rendered::json(json).with_text(text))
}

/// Builtin name or JSON file.
pub enum Source {
    Exact(QDifferenceSystem<RationalFunctionQ>),
    Parsed(ParsedSystem),
}

pub fn load_system(a: &SystemArgs) -> CliResult<Source> {
    if BUILTIN_NAMES.contains(&a.system.as_str()) {
        return Ok(Source::Exact(builtin(&a.system, a.n, &a.z)?));
    }
    let text = std::fs::read_to_string(&a.system)
        .map_err(|e| CliError::Input(format!("`{}` is neither a builtin {BUILTIN_NAMES:?} nor a readable file: {e}", a.system)))?;
    Ok(Source::Parsed(parse_system_json(&text)?))
}

pub fn solve(a: &SolveArgs) -> CliResult<Rendered> {
    let sys = match load_system(&a.system)? {
        Source::Exact(s) => {
            let q = a.q.ok_or_else(|| CliError::Usage("--q is required for an exact system".into()))?;
            s.specialize(q).ok_or_else(|| CliError::Input("system has a pole at this q".into()))?
        }
        Source::Parsed(p) => p.numeric(a.q)?,
    };
    let sol = frobenius_solution(&sys, a.d)?;
    let x = sol.eval(a.big_q)?;
    let residual = sol.shift_residual(&sys, a.big_q)?;
    let cas = sol.casoratian(a.big_q)?;
    let rows: Vec<Value> = (0..x.rows()).map(|i| Value::Array(x.row(i).iter().map(|z| c_json(*z)).collect())).collect();
    let json = json!({"q": c_json(sol.q().q()), "Q": c_json(a.big_q), "D": a.d, "solution": rows, "shift_residual": residual, "casoratian": c_json(cas)});
    Ok(Rendered::json(json).with_text(format!("shift residual {residual:.3e}\nCasoratian {cas}\n")))
}

pub fn birkhoff(a: &BirkhoffArgs) -> CliResult<Rendered> {
    let mu = monodromy_exponents()?;
    let mu_c = [gaussian_to_c64(&mu[0]), gaussian_to_c64(&mu[1]), gaussian_to_c64(&mu[2])];
    let mu_json: Vec<Value> = mu_c.iter().map(|m| c_json(*m)).collect();
    if let Some(q) = a.q {
        let ex = MonodromyExample::new(&qvalue(q)?)?;
        let p = ex.birkhoff(a.big_q)?;
        let json = json!({"q": c_json(q), "Q": c_json(a.big_q), "mu": mu_json, "birkhoff": c_json(p)});
        return Ok(Rendered::json(json).with_text(format!("P(Q) = {p}\n")));
    }
    let s = schedule(&a.schedule)?;
    let lim = birkhoff_limit(a.big_q, a.q0, &s, Exec::default())?;
    let formula = birkhoff_limit_formula(a.big_q, a.q0)?;
    let i = C::new(0.0, 1.0);
    let paper_dist = branch_distance(lim.value, [-a.big_q, -i * a.big_q, a.big_q], mu_c, 4);
    let sol = solution_limit(a.big_q, a.q0, &s, Exec::default())?;
    let sol_formula = solution_limit_formula(a.big_q, a.q0)?;
    let json = json!({
        "Q": c_json(a.big_q),
        "q0": c_json(a.q0),
        "mu": mu_json,
        "birkhoff_limit": c_json(lim.value),
        "observed_order": lim.observed_order,
        "formula_minus_Q_iQ_Q": c_json(formula),
        "formula_rel_error": rel(lim.value, formula),
        "branch_distance_minus_Q_minus_iQ_Q": paper_dist,
        "solution_limit": c_json(sol.value),
        "solution_formula": c_json(sol_formula),
        "solution_rel_error": rel(sol.value, sol_formula),
    });
    let text = format!(
        "lim P(Q) = {} (order {})\n(−Q)^μ1 (iQ)^μ2 Q^μ3 = {formula}\ndistance to (−Q)^μ1 (−iQ)^μ2 Q^μ3 branches: {paper_dist:.3e}\nlim f0(Q) = {}\n",
        lim.value,
        lim.observed_order.map_or("n/a".to_string(), |p| format!("{p:.3}")),
        sol.value
    );
    Ok(Rendered::json(json).with_text(text))
}

pub fn confluence(a: &ConfluenceArgs) -> CliResult<Rendered> {
    let sys = match load_system(&a.system)? {
        Source::Exact(s) => s,
        Source::Parsed(ParsedSystem::Exact(s)) => s,
        Source::Parsed(ParsedSystem::Numeric(_)) => {
            return Err(CliError::Input("confluence needs an exact system (\"q\": \"q\")".into()));
        }
    };
    let rep = check_confluent(&sys, a.q0)?;
    let text = format!(
        "confluent: {}\n1 spiral separation: {}\n2 limit exists: {}\n3 limit regular singular: {}\n4 Jordan basis converges: {}\n",
        rep.confluent,
        rep.spiral_separation.ok,
        rep.limit_exists.ok,
        rep.limit_regular_singular.ok,
        rep.jordan_basis_converges.ok
    );
    Ok(Rendered::json(rep.to_json()).with_text(text))
}

fn series_json<S: qonf_rings::json::JsonScalar>(s: &LogSeries<S>) -> CliResult<Value> {
    Ok(serde_json::to_value(log_series_to_json(s))?)
}

pub fn jfn(a: &JfnArgs) -> CliResult<Rendered> {
    let (n, d) = (a.n, a.d);
    let json = match a.kind {
        JfnKind::Kth => series_json(&LogSeries::from_series(&jk_series(n, d)?))?,
        JfnKind::KthModified => series_json(&jk_modified(n, d)?)?,
        JfnKind::Coh => {
            let unit = a.z == BigRational::from_integer(BigInt::from(1));
            let s = jcoh_series_at(n, d, &a.z, Exec::default())?;
            let mut j = log_series_to_json(&LogSeries::from_series(&s));
            if unit {
                for c in &mut j.coeffs {
                    c.zexp = Some(jcoh_z_exponent(n, c.d, c.i));
                }
            }
            let mut v = serde_json::to_value(j)?;
            v["z"] = Value::String(a.z.to_string());
            v
        }
        JfnKind::Equivariant => {
            if a.lambda.len() != n + 1 {
                return Err(CliError::Usage(format!("equivariant needs N + 1 = {} --lambda values, got {}", n + 1, a.lambda.len())));
            }
            let q = a.q.ok_or_else(|| CliError::Usage("equivariant needs --q".into()))?;
            let z = C::new(rational_to_f64(&a.z), 0.0);
            let spec = EquivariantSpec::new(a.lambda.clone(), z)?;
            let j = jk_equivariant(&spec, &qvalue(q)?, d)?;
            let branches: Vec<Value> = (0..=n)
                .map(|i| json!({"i": i, "coeffs": j.coeffs(i).iter().map(|c| c_json(*c)).collect::<Vec<_>>()}))
                .collect();
            json!({"N": n, "D": d, "q": c_json(q), "z": c_json(z), "lambda": a.lambda.iter().map(|l| c_json(*l)).collect::<Vec<_>>(), "branches": branches})
        }
    };
    Ok(Rendered::json(json))
}

pub fn compare(a: &CompareArgs) -> CliResult<Rendered> {
    let cmp = confluence_compare(a.n, a.d)?;
    let table = p2_table(a.d)?;
    let json = json!({
        "N": a.n,
        "D": a.d,
        "checked": cmp.checked,
        "exact": cmp.is_exact(),
        "mismatches": cmp.mismatches,
        "k_limit": serde_json::to_value(log_series_to_json(&cmp.k_limit))?,
        "p2_table": table.render(),
        "p2_table_verified": table.all_verified(),
    });
    let text = format!(
        "confluence_compare N={} D={}: {} ({} coefficients)\n\n{}",
        a.n,
        a.d,
        if cmp.is_exact() { "exact match" } else { "MISMATCH" },
        cmp.checked,
        table.render()
    );
    let failed = !(cmp.is_exact() && table.all_verified());
    Ok(Rendered::json(json).with_text(text).fail_if(failed, format!("confluence_compare N={} D={}", a.n, a.d)))
}
