//! The thirteen end-to-end checks, grouped as numbered criteria, with the
//! settings they run under.

use crate::catalog::{ELASTIC_SPECS, PRODUCTION_SPECS};
use crate::fock::{
    car_check, character_trace, character_trace_check, current_algebra_check, energy_bound_check,
    field_current_commutator_check, twist_check, Cutoff, FockError,
};
use crate::inner::{
    causality_check, functional_equation_probe, lw_matrix, parse_inner, standard_probe_pairs, CausalityGrid,
    HalfLineSignal, InnerError, InnerFunction, ParseError,
};
use crate::quadrature::{QuadratureError, QuadratureSpec};
use crate::report::CheckReport;
use crate::scatter::{
    collapse_defect, e0_line_average, e0_project, iota_embed, log_grid, lw_invariance_residual, phi_tilde,
    production_report, triangle_distance, BoseWave, Grid1D, Kernel11, ScatterError,
};
use crate::series::{compare_series, fixed_point_character_check, jacobi_identity_check, partition_gf, BivariateSeries, Order};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};
use thiserror::Error;

pub const LW_MATRIX_ANCHOR: &str = "[[a, i b], [-i b, a]] is unitary and equals diag(phi, phi_check) in the rotated basis";
pub const CAUSALITY_ANCHOR: &str = "phi(P) maps functions supported on the right half-line to the same (Paley-Wiener)";
pub const INVARIANCE_ANCHOR: &str = "V_phi preserves iota(H^1) iff phi(p) = e^{i(kappa p + theta)}, kappa >= 0";
pub const ELASTIC_ANCHOR: &str = "phi = e^{i kappa p} gives phi_tilde(s) = e^{i kappa s}";
pub const COLLAPSE_ANCHOR: &str = "phi'(p, q) = phi_tilde(p q)";
pub const BOUND_ANCHOR: &str = "|phi_tilde(s)| <= 1";
pub const PRODUCTION_ANCHOR: &str = "|phi_tilde| = 1 identically iff phi(p) = e^{i(kappa p + theta)}";
pub const E0_ANCHOR: &str = "(e0 f)(p, q) = (1/(p+q)) int_0^{p+q} f(p+q-x, x) dx";
pub const INVOLUTION_ANCHOR: &str = "phi_check_check = phi";
pub const PROBE_ANCHOR: &str = "phi(p1) phi_check(q1) depends on p1 + q1 only for exponentials";

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("invalid inner-function spec `{spec}`: {source}")]
    Parse { spec: String, source: ParseError },
    #[error("invalid setting: {0}")]
    Config(String),
    #[error("quadrature did not converge: {0}")]
    NonConvergence(QuadratureError),
    #[error(transparent)]
    Scatter(ScatterError),
    #[error(transparent)]
    Inner(InnerError),
}

impl From<ScatterError> for SuiteError {
    fn from(e: ScatterError) -> Self {
        match e {
            ScatterError::Quadrature(q @ QuadratureError::NonConvergence { .. }) => SuiteError::NonConvergence(q),
            other => SuiteError::Scatter(other),
        }
    }
}

/// Settings for the whole suite. Missing fields take the defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Doubled truncation order of the character checks.
    pub order: u32,
    /// Doubled energy cutoff of the Fock checks.
    pub e2_max: u32,
    /// Inner functions expected to scatter elastically.
    pub elastic: Vec<String>,
    /// Inner functions expected to produce particles.
    pub production: Vec<String>,
    /// Exponents of the plane-wave check.
    pub kappas: Vec<f64>,
    /// Quadrature tolerance.
    pub tol: f64,
    pub causality_points: usize,
    pub causality_window: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            order: 40,
            e2_max: 12,
            elastic: ELASTIC_SPECS.iter().map(|s| s.to_string()).collect(),
            production: PRODUCTION_SPECS.iter().map(|s| s.to_string()).collect(),
            kappas: vec![0.0, 1.0, 2.0],
            tol: 1e-7,
            causality_points: 1 << 14,
            causality_window: 80.0,
        }
    }
}

pub const MAX_ORDER: u32 = 80;
pub const MAX_E2: u32 = 16;

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), SuiteError> {
        if self.order > MAX_ORDER {
            return Err(SuiteError::Config(format!("order {} exceeds {MAX_ORDER}", self.order)));
        }
        if self.e2_max > MAX_E2 {
            return Err(SuiteError::Config(format!("e2_max {} exceeds {MAX_E2}", self.e2_max)));
        }
        if !(self.tol > 0.0) {
            return Err(SuiteError::Config("tol must be positive".into()));
        }
        if self.kappas.iter().any(|k| !(*k >= 0.0)) {
            return Err(SuiteError::Config("kappas must be nonnegative".into()));
        }
        self.inner_functions().map(|_| ())
    }

    pub fn quad(&self) -> QuadratureSpec<f64> {
        QuadratureSpec::with_tol(self.tol)
    }

    pub fn cutoff(&self) -> Cutoff {
        Cutoff::new(self.e2_max)
    }

    /// Every configured inner function, tagged with the expected behaviour
    /// (`true` for elastic).
    pub fn inner_functions(&self) -> Result<Vec<(String, InnerFunction<f64>, bool)>, SuiteError> {
        let parse = |s: &String, elastic| {
            parse_inner::<f64>(s)
                .map(|phi| (s.clone(), phi, elastic))
                .map_err(|source| SuiteError::Parse { spec: s.clone(), source })
        };
        self.elastic
            .iter()
            .map(|s| parse(s, true))
            .chain(self.production.iter().map(|s| parse(s, false)))
            .collect()
    }

    pub fn causality_grid(&self) -> CausalityGrid<f64> {
        CausalityGrid { points: self.causality_points, window: self.causality_window, tol: 1e-4 }
    }
}

/// Outcome of one numbered criterion. Timings are not serialized so that
/// reports are reproducible bit for bit.
#[derive(Debug, Clone, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub runtime_limit: Option<Duration>,
}

impl Criterion {
    pub fn within_time(&self) -> bool {
        self.runtime_limit.is_none_or(|l| self.elapsed <= l)
    }
}

pub const TITLES: [&str; 13] = [
    "Jacobi triple product",
    "fixed-point character",
    "CAR relations",
    "current algebra",
    "linear energy bounds",
    "twist identity",
    "Longo-Witten matrix",
    "causality",
    "one-particle invariance dichotomy",
    "elastic exponential S-matrix",
    "collapse and bound",
    "particle production",
    "e0 projection",
];

const LIMITS: [Option<u64>; 13] = [
    Some(5),
    Some(5),
    None,
    None,
    None,
    None,
    None,
    Some(10),
    None,
    Some(30),
    None,
    Some(60),
    None,
];

fn fock_report(name: String, anchor: &str, r: Result<CheckReport, FockError>) -> CheckReport {
    r.unwrap_or_else(|e| CheckReport::new(name, false, e.to_string(), 0.0, anchor))
}

fn odd_upto(max2: i32) -> impl Iterator<Item = i32> + Clone {
    (-max2..=max2).filter(|k| k.rem_euclid(2) == 1)
}

fn jacobi(cfg: &SuiteConfig) -> Vec<CheckReport> {
    vec![jacobi_identity_check::<BigInt>(Order::doubled(cfg.order))]
}

fn fixed_point(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let c = cfg.cutoff();
    let trace_z0 = BivariateSeries::from_univariate(&character_trace::<BigInt>(c).z0_slice());
    let p = BivariateSeries::from_univariate(&partition_gf::<BigInt>(Order::doubled(c.e2_max)));
    vec![
        fixed_point_character_check::<BigInt>(Order::doubled(cfg.order)),
        character_trace_check::<BigInt>(c),
        compare_series(
            &format!("basis_charge_zero_count[e2_max={}]", c.e2_max),
            &trace_z0,
            &p,
            crate::series::FIXED_POINT_ANCHOR,
        ),
    ]
}

fn car(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let c = cfg.cutoff();
    let mut out = Vec::new();
    for n2 in odd_upto(5) {
        for m2 in odd_upto(5) {
            let name = format!("car[n={n2}/2,m={m2}/2]");
            out.push(fock_report(name, crate::fock::CAR_ANCHOR, car_check::<BigRational>(n2, m2, c)));
        }
    }
    out
}

fn current(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let c = cfg.cutoff();
    let mut out = Vec::new();
    for m in -3..=3 {
        for n in -3..=3 {
            let name = format!("current_algebra[m={m},n={n}]");
            out.push(fock_report(name, crate::fock::CURRENT_ANCHOR, current_algebra_check::<BigRational>(m, n, c)));
        }
    }
    for n in -2..=2 {
        for k2 in odd_upto(5) {
            let name = format!("field_current[n={n},k={k2}/2]");
            out.push(fock_report(
                name,
                crate::fock::FIELD_CURRENT_ANCHOR,
                field_current_commutator_check::<BigRational>(n, k2, c),
            ));
        }
    }
    out
}

fn energy_bound(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let c = cfg.cutoff();
    (-4..=4)
        .map(|n| {
            let name = format!("energy_bound[n={n}]");
            fock_report(name, crate::fock::ENERGY_BOUND_ANCHOR, energy_bound_check::<BigRational>(n, c))
        })
        .collect()
}

fn twist(cfg: &SuiteConfig) -> Vec<CheckReport> {
    vec![twist_check::<BigRational>(cfg.cutoff())]
}

/// 101 points on `[-10, 10]`.
pub fn real_line_samples() -> Vec<f64> {
    (0..101).map(|k| -10.0 + 0.2 * k as f64).collect()
}

/// Unitarity and diagonalization of the 2x2 matrix over the real grid.
pub fn lw_matrix_checks(spec: &str, phi: &InnerFunction<f64>) -> Vec<CheckReport> {
    let (mut unit, mut diag) = (0.0f64, 0.0f64);
    for p in real_line_samples() {
        let m = lw_matrix(phi, p);
        unit = unit.max(m.unitarity_defect());
        diag = diag.max(m.diagonalization_defect(phi.eval(p), phi.eval_check(p)));
    }
    vec![
        CheckReport::below(format!("lw_unitarity[{spec}]"), unit, 1e-12, LW_MATRIX_ANCHOR),
        CheckReport::below(format!("lw_diagonalization[{spec}]"), diag, 1e-12, LW_MATRIX_ANCHOR),
    ]
}

pub fn causality_report(spec: &str, phi: &InnerFunction<f64>, grid: CausalityGrid<f64>) -> CheckReport {
    let name = format!("causality[{spec}]");
    match causality_check(phi, &HalfLineSignal::decaying_exponential(1.0), grid) {
        Ok(out) => CheckReport::below(name, out.leakage, grid.tol, CAUSALITY_ANCHOR),
        Err(e) => CheckReport::new(name, false, e.to_string(), grid.tol, CAUSALITY_ANCHOR),
    }
}

/// Everything checked for a single inner function on the real line.
pub fn inner_checks(spec: &str, phi: &InnerFunction<f64>, grid: CausalityGrid<f64>) -> Vec<CheckReport> {
    let mut out = lw_matrix_checks(spec, phi);
    let back = phi.check_conjugate().check_conjugate();
    let inv = real_line_samples()
        .into_iter()
        .fold(0.0f64, |m, p| m.max((back.eval(p) - phi.eval(p)).norm()));
    out.push(CheckReport::below(format!("check_involution[{spec}]"), inv, 1e-12, INVOLUTION_ANCHOR));
    out.push(causality_report(spec, phi, grid));
    let r = functional_equation_probe(phi, &standard_probe_pairs());
    let name = format!("functional_equation_probe[{spec}]");
    out.push(if phi.is_exponential() {
        CheckReport::below(name, r, 1e-12, PROBE_ANCHOR)
    } else {
        CheckReport::above(name, r, 1e-3, PROBE_ANCHOR)
    });
    out
}

fn lw(cfg: &SuiteConfig) -> Result<Vec<CheckReport>, SuiteError> {
    Ok(cfg.inner_functions()?.iter().flat_map(|(s, phi, _)| lw_matrix_checks(s, phi)).collect())
}

fn causality(cfg: &SuiteConfig) -> Result<Vec<CheckReport>, SuiteError> {
    let grid = cfg.causality_grid();
    Ok(cfg.inner_functions()?.iter().map(|(s, phi, _)| causality_report(s, phi, grid)).collect())
}

pub const ELASTIC_RESIDUAL: f64 = 1e-6;
pub const PRODUCTION_RESIDUAL: f64 = 1e-2;

pub fn invariance_residual(phi: &InnerFunction<f64>, quad: &QuadratureSpec<f64>) -> Result<f64, SuiteError> {
    Ok(lw_invariance_residual(phi, &BoseWave::exponential(1.0), &Grid1D::default(), quad)?)
}

fn invariance(cfg: &SuiteConfig) -> Result<Vec<CheckReport>, SuiteError> {
    let quad = cfg.quad();
    cfg.inner_functions()?
        .iter()
        .map(|(s, phi, elastic)| {
            let r = invariance_residual(phi, &quad)?;
            let name = format!("lw_invariance_residual[{s}]");
            Ok(if *elastic {
                CheckReport::below(name, r, ELASTIC_RESIDUAL, INVARIANCE_ANCHOR)
            } else {
                CheckReport::above(name, r, PRODUCTION_RESIDUAL, INVARIANCE_ANCHOR)
            })
        })
        .collect()
}

fn elastic_exponential(cfg: &SuiteConfig) -> Result<Vec<CheckReport>, SuiteError> {
    let quad = cfg.quad();
    let s_grid = log_grid(0.1, 10.0, 50)?;
    cfg.kappas
        .iter()
        .map(|&kappa| {
            let phi = InnerFunction::exponential(kappa, 0.0).map_err(SuiteError::Inner)?;
            let mut worst = 0.0f64;
            for &s in &s_grid {
                worst = worst.max((phi_tilde(&phi, s, &quad)? - Complex::from_polar(1.0, kappa * s)).norm());
            }
            Ok(CheckReport::below(format!("plane_wave[kappa={kappa}]"), worst, 1e-6, ELASTIC_ANCHOR))
        })
        .collect()
}

fn collapse_and_bound(cfg: &SuiteConfig) -> Result<Vec<CheckReport>, SuiteError> {
    let quad = cfg.quad();
    let pq = log_grid(0.25, 4.0, 10)?;
    let s_grid = log_grid(0.01, 100.0, 25)?;
    let mut out = Vec::new();
    for (s, phi, _) in cfg.inner_functions()? {
        let d = collapse_defect(&phi, &pq, &pq, &quad)?;
        out.push(CheckReport::below(format!("collapse[{s}]"), d, 10.0 * cfg.tol, COLLAPSE_ANCHOR));
        let rep = production_report(&phi, &s_grid, &quad)?;
        let max = rep.rows.iter().fold(0.0f64, |m, r| m.max(r.elastic_modulus));
        out.push(CheckReport::new(
            format!("elastic_bound[{s}]"),
            rep.bound_ok,
            max,
            1.0 + crate::scatter::BOUND_SLACK,
            BOUND_ANCHOR,
        ));
    }
    Ok(out)
}

fn production(cfg: &SuiteConfig) -> Result<Vec<CheckReport>, SuiteError> {
    let quad = cfg.quad();
    let s_grid = log_grid(0.1, 20.0, 30)?;
    let mut out = Vec::new();
    for (s, phi, elastic) in cfg.inner_functions()? {
        let rep = production_report(&phi, &s_grid, &quad)?;
        if !elastic {
            out.push(CheckReport::below(
                format!("min_elastic_modulus[{s}]"),
                rep.min_modulus,
                1.0 - 1e-3,
                PRODUCTION_ANCHOR,
            ));
        }
        let invariant = invariance_residual(&phi, &quad)? < PRODUCTION_RESIDUAL;
        let agree = rep.production != invariant && rep.production != elastic;
        out.push(CheckReport::new(
            format!("dichotomy_agreement[{s}]"),
            agree,
            format!("production={} one_particle_invariant={invariant} expected_elastic={elastic}", rep.production),
            0.0,
            PRODUCTION_ANCHOR,
        ));
    }
    Ok(out)
}

/// `max_s |e0 f(s) - overlap(s)|` for the indicator of the unit square.
pub fn unit_square_defect(quad: &QuadratureSpec<f64>) -> Result<f64, SuiteError> {
    let k = Kernel11::indicator_square(1.0);
    let mut worst = 0.0f64;
    for j in 0..=60 {
        let s = 0.05 * j as f64;
        let want = if s <= 1.0 {
            1.0
        } else if s <= 2.0 {
            (2.0 - s) / s
        } else {
            0.0
        };
        worst = worst.max((e0_line_average(&k, s, quad)? - Complex::new(want, 0.0)).norm());
    }
    Ok(worst)
}

fn e0(cfg: &SuiteConfig) -> Result<Vec<CheckReport>, SuiteError> {
    let quad = cfg.quad();
    let bump = Kernel11::from_fn(|p: f64, q: f64| Complex::new((-(p - 1.0).powi(2) - (q - 2.0).powi(2)).exp(), 0.0));
    let once = e0_project(&bump, &quad);
    let twice = e0_project(&once, &quad);
    let grid = Grid1D::gauss_legendre(10.0, 4, 8)?;
    let idem = triangle_distance(&twice, &once, &bump, &grid)?;
    let iota = iota_embed(&BoseWave::exponential(1.0));
    let fixed = triangle_distance(&e0_project(&iota, &quad), &iota, &iota, &grid)?;
    Ok(vec![
        CheckReport::below("e0_idempotence[gaussian bump]", idem, 1e-6, E0_ANCHOR),
        CheckReport::below("e0_fixes_iota_image[exp(-s)]", fixed, 1e-6, E0_ANCHOR),
        CheckReport::below("e0_unit_square[piecewise]", unit_square_defect(&quad)?, 1e-8, E0_ANCHOR),
    ])
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> Result<Criterion, SuiteError> {
    if !(1..=13).contains(&id) {
        return Err(SuiteError::Config(format!("no criterion {id}")));
    }
    let start = Instant::now();
    let checks = match id {
        1 => jacobi(cfg),
        2 => fixed_point(cfg),
        3 => car(cfg),
        4 => current(cfg),
        5 => energy_bound(cfg),
        6 => twist(cfg),
        7 => lw(cfg)?,
        8 => causality(cfg)?,
        9 => invariance(cfg)?,
        10 => elastic_exponential(cfg)?,
        11 => collapse_and_bound(cfg)?,
        12 => production(cfg)?,
        _ => e0(cfg)?,
    };
    let k = usize::from(id - 1);
    Ok(Criterion {
        id,
        title: TITLES[k],
        pass: !checks.is_empty() && checks.iter().all(|c| c.pass),
        checks,
        elapsed: start.elapsed(),
        runtime_limit: LIMITS[k].map(Duration::from_secs),
    })
}

pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<Criterion>, SuiteError> {
    cfg.validate()?;
    (1..=13).map(|id| run_criterion(id, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        let bad = SuiteConfig { order: 81, ..SuiteConfig::default() };
        assert!(matches!(bad.validate(), Err(SuiteError::Config(_))));
        let bad = SuiteConfig { elastic: vec!["exp:kapa=1".into()], ..SuiteConfig::default() };
        assert!(matches!(bad.validate(), Err(SuiteError::Parse { .. })));
    }

    #[test]
    fn misplaced_blaschke_fails_the_elastic_slot() {
        let cfg = SuiteConfig {
            elastic: vec!["blaschke:0+1i".into()],
            production: vec![],
            ..SuiteConfig::default()
        };
        let c = run_criterion(9, &cfg).unwrap();
        assert!(!c.pass);
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion(14, &SuiteConfig::default()).is_err());
    }
}
