use crate::output::{check_row, Outcome, Table, CHECK_COLUMNS};
use crate::CliError;
use chiral_lab::fock::{current_algebra_check, enumerate_basis, fock_suite, Cutoff, SuiteRanges, CURRENT_ANCHOR};
use chiral_lab::inner::{functional_equation_probe, parse_inner, standard_probe_pairs, CausalityGrid};
use chiral_lab::quadrature::QuadratureSpec;
use chiral_lab::scatter::{log_grid, phi_prime, production_report, BOUND_SLACK};
use chiral_lab::series::{
    compare_series, fermionic_character, fixed_point_character_check, theta_jacobi, Order, JACOBI_ANCHOR,
};
use chiral_lab::suite::{inner_checks, run_all, SuiteConfig, BOUND_ANCHOR, MAX_E2, MAX_ORDER};
use chiral_lab::{BigBivariateSeries, BigInt, CheckReport, InnerFunction64};
use serde_json::json;

fn phi(spec: &str) -> Result<InnerFunction64, CliError> {
    parse_inner(spec).map_err(|e| CliError::Usage(format!("--phi: {e}")))
}

/// `a:b:n`, `n` log-uniform points from `a` to `b`.
pub fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |m: &str| CliError::Usage(format!("--s `{text}`: {m}"));
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(bad("expected a:b:n"));
    };
    let a: f64 = a.trim().parse().map_err(|_| bad("start is not a number"))?;
    let b: f64 = b.trim().parse().map_err(|_| bad("end is not a number"))?;
    let n: usize = n.trim().parse().map_err(|_| bad("count is not a positive integer"))?;
    log_grid(a, b, n).map_err(|e| bad(&e.to_string()))
}

pub fn quad(tol: f64, panels: Option<usize>, max_panels: Option<usize>) -> Result<QuadratureSpec<f64>, CliError> {
    let d = QuadratureSpec::with_tol(tol);
    let q = QuadratureSpec { panels: panels.unwrap_or(d.panels), max_panels: max_panels.unwrap_or(d.max_panels), ..d };
    q.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(q)
}

pub fn character(order: u32, corrupt: bool) -> Result<Outcome, CliError> {
    if order > MAX_ORDER {
        return Err(CliError::Usage(format!("--order {order} exceeds {MAX_ORDER}")));
    }
    let order = Order::doubled(order);
    let mut lhs: BigBivariateSeries = fermionic_character(order);
    if corrupt {
        let (e, q, c) = lhs.terms().last().map(|(e, q, c)| (e, q, c.clone())).expect("nonempty character");
        lhs.set_coeff(e, q, c + BigInt::from(1));
    }
    let checks = vec![
        compare_series(&format!("jacobi_triple_product[order={}]", order.get()), &lhs, &theta_jacobi(order), JACOBI_ANCHOR),
        fixed_point_character_check::<BigInt>(order),
    ];
    let mut table = Table::new(&["t_exponent_doubled", "charge", "coefficient"]);
    let mut coeffs = Vec::new();
    for (e, q, c) in lhs.terms() {
        table.push(vec![e.doubled().to_string(), q.to_string(), c.to_string()]);
        coeffs.push(json!({"t_exponent_doubled": e.doubled(), "charge": q, "coefficient": c.to_string()}));
    }
    Ok(Outcome {
        command: "character",
        checks,
        data: json!({"order_doubled": order.get(), "coefficients": coeffs}),
        table,
    })
}

pub fn fock(e2_max: u32, pair: Option<(i32, i32)>) -> Result<Outcome, CliError> {
    if e2_max > MAX_E2 {
        return Err(CliError::Usage(format!("--emax {e2_max} exceeds {MAX_E2}")));
    }
    let c = Cutoff::new(e2_max);
    let checks = match pair {
        Some((m, n)) => vec![current_algebra_check::<chiral_lab::BigRational>(m, n, c)
            .unwrap_or_else(|e| CheckReport::new(format!("current_algebra[m={m},n={n}]"), false, e.to_string(), 0.0, CURRENT_ANCHOR))],
        None => fock_suite::<chiral_lab::BigRational>(c, SuiteRanges::default()),
    };
    let table = Table::of_checks(&checks);
    Ok(Outcome {
        command: "fock-check",
        checks,
        data: json!({"e2_max": e2_max, "basis_dim": enumerate_basis(c).len()}),
        table,
    })
}

pub fn inner(spec: &str, points: usize) -> Result<Outcome, CliError> {
    let f = phi(spec)?;
    let grid = CausalityGrid { points, ..CausalityGrid::default() };
    let checks = inner_checks(spec, &f, grid);
    let table = Table::of_checks(&checks);
    Ok(Outcome {
        command: "inner-check",
        data: json!({
            "phi": f.to_string(),
            "phi_check": f.check_conjugate().to_string(),
            "exponential": f.is_exponential(),
            "functional_equation_residual": functional_equation_probe(&f, &standard_probe_pairs()),
        }),
        checks,
        table,
    })
}

pub fn production(spec: &str, s: &[f64], quad: &QuadratureSpec<f64>) -> Result<Outcome, CliError> {
    let f = phi(spec)?;
    let rep = production_report(&f, s, quad)?;
    let max = rep.rows.iter().fold(0.0f64, |m, r| m.max(r.elastic_modulus));
    let checks = vec![CheckReport::new(
        format!("elastic_bound[{spec}]"),
        rep.bound_ok,
        max,
        1.0 + BOUND_SLACK,
        BOUND_ANCHOR,
    )];
    let mut table = Table::new(&["s", "re_phi_tilde", "im_phi_tilde", "abs_phi_tilde", "abs_phi_tilde_sq"]);
    for r in &rep.rows {
        table.push(vec![
            r.s.to_string(),
            r.re.to_string(),
            r.im.to_string(),
            r.elastic_modulus.to_string(),
            r.elastic_mod_squared.to_string(),
        ]);
    }
    let data = serde_json::to_value(&rep).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(Outcome { command: "production", checks, data, table })
}

pub fn scatter(spec: &str, point: Option<(f64, f64)>, s: &[f64], q: &QuadratureSpec<f64>) -> Result<Outcome, CliError> {
    let f = phi(spec)?;
    let tol = q.tol;
    let pairs: Vec<(f64, f64)> = match point {
        Some(pq) => vec![pq],
        None => s.iter().map(|&s| (s, 1.0)).collect(),
    };
    let mut table = Table::new(&["p", "q", "re_phi_prime", "im_phi_prime", "abs_phi_prime"]);
    let mut rows = Vec::new();
    let mut max = 0.0f64;
    for (p, qq) in pairs {
        let v = phi_prime(&f, p, qq, q)?;
        max = max.max(v.norm());
        table.push(vec![p.to_string(), qq.to_string(), v.re.to_string(), v.im.to_string(), v.norm().to_string()]);
        rows.push(json!({"p": p, "q": qq, "re": v.re, "im": v.im, "abs": v.norm()}));
    }
    let checks = vec![CheckReport::new(
        format!("phi_prime_modulus[{spec}]"),
        max <= 1.0 + tol,
        max,
        1.0 + tol,
        BOUND_ANCHOR,
    )];
    Ok(Outcome { command: "scatter", checks, data: json!({"phi": f.to_string(), "tol": tol, "rows": rows}), table })
}

pub fn report_all(cfg: &SuiteConfig) -> Result<Outcome, CliError> {
    let criteria = run_all(cfg)?;
    let mut header = vec!["criterion"];
    header.extend(CHECK_COLUMNS);
    let mut table = Table::new(&header);
    let mut checks = Vec::new();
    for c in &criteria {
        for r in &c.checks {
            let mut row = vec![c.id.to_string()];
            row.extend(check_row(r));
            table.push(row);
        }
        checks.extend(c.checks.iter().cloned());
        if !c.pass && c.checks.is_empty() {
            checks.push(CheckReport::new(format!("criterion_{}", c.id), false, "no checks ran", 0.0, c.title));
        }
    }
    let summary: Vec<_> = criteria.iter().map(|c| json!({"id": c.id, "title": c.title, "pass": c.pass})).collect();
    Ok(Outcome {
        command: "report-all",
        checks,
        data: json!({"config": cfg, "criteria": summary}),
        table,
    })
}
