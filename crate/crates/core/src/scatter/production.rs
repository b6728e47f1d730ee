//! The elastic amplitude `phi_tilde` and the particle-production table.

use super::ScatterError;
use crate::inner::InnerFunction;
use crate::quadrature::{integrate_2d, QuadratureSpec};
use crate::scalar::Real;
use num_complex::Complex;
use serde::Serialize;
use std::fmt::Write as _;

fn positive<T: Real>(what: &'static str, v: T) -> Result<(), ScatterError> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(ScatterError::NonPositive { what, value: v.to_f64_lossy() })
    }
}

/// `(1/pq) ∫_0^p ∫_0^q phi((p-x)(q-y)) phi(xy) phi_check((p-x)y) phi_check(x(q-y)) dy dx`.
pub fn phi_prime<T: Real>(phi: &InnerFunction<T>, p: T, q: T, quad: &QuadratureSpec<T>) -> Result<Complex<T>, ScatterError> {
    positive("p", p)?;
    positive("q", q)?;
    let inv = T::one() / (p * q);
    integrate_2d(
        |x: T, y: T| -> Result<Complex<T>, ScatterError> {
            let (px, qy) = (p - x, q - y);
            Ok(phi.eval(px * qy) * phi.eval(x * y) * phi.eval_check(px * y) * phi.eval_check(x * qy) * inv)
        },
        (T::zero(), p),
        (T::zero(), q),
        quad,
    )
}

/// `phi_prime(s, 1)`.
pub fn phi_tilde<T: Real>(phi: &InnerFunction<T>, s: T, quad: &QuadratureSpec<T>) -> Result<Complex<T>, ScatterError> {
    positive("s", s)?;
    phi_prime(phi, s, T::one(), quad)
}

/// `max |phi_prime(p, q) - phi_tilde(p q)|` over the product grid.
pub fn collapse_defect<T: Real>(
    phi: &InnerFunction<T>,
    ps: &[T],
    qs: &[T],
    quad: &QuadratureSpec<T>,
) -> Result<T, ScatterError> {
    let mut worst = T::zero();
    for &p in ps {
        for &q in qs {
            let d = (phi_prime(phi, p, q, quad)? - phi_tilde(phi, p * q, quad)?).norm();
            worst = worst.max(d);
        }
    }
    Ok(worst)
}

/// `n` log-uniform points from `a` to `b` inclusive.
pub fn log_grid<T: Real>(a: T, b: T, n: usize) -> Result<Vec<T>, ScatterError> {
    positive("grid start", a)?;
    positive("grid end", b)?;
    if n == 0 || (n == 1 && a != b) || b < a {
        return Err(ScatterError::InvalidGrid(format!("cannot place {n} points from {} to {}", a.to_f64_lossy(), b.to_f64_lossy())));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let (la, lb) = (a.ln(), b.ln());
    let step = (lb - la) / T::from_usize(n - 1).expect("grid size");
    Ok((0..n)
        .map(|k| match k {
            0 => a,
            k if k + 1 == n => b,
            k => (la + step * T::from_usize(k).expect("index")).exp(),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductionRow<T> {
    pub s: T,
    pub re: T,
    pub im: T,
    /// `|phi_tilde(s)|`
    pub elastic_modulus: T,
    /// `|phi_tilde(s)|^2`
    pub elastic_mod_squared: T,
}

/// `phi_tilde` tabulated over an s-grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductionReport<T> {
    pub phi: String,
    pub tol: T,
    pub rows: Vec<ProductionRow<T>>,
    /// `|phi_tilde| <= 1 + 1e-9` at every row.
    pub bound_ok: bool,
    /// `|phi_tilde| < 1 - 10 tol` at some row.
    pub production: bool,
    pub min_modulus: T,
}

impl<T: Real + std::fmt::Display> ProductionReport<T> {
    pub const CSV_HEADER: &'static str = "s,re_phi_tilde,im_phi_tilde,abs_phi_tilde,abs_phi_tilde_sq";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{}", r.s, r.re, r.im, r.elastic_modulus, r.elastic_mod_squared);
        }
        out
    }
}

pub const BOUND_SLACK: f64 = 1e-9;

pub fn production_report<T: Real + std::fmt::Display>(
    phi: &InnerFunction<T>,
    s_grid: &[T],
    quad: &QuadratureSpec<T>,
) -> Result<ProductionReport<T>, ScatterError> {
    let rows = s_grid
        .iter()
        .map(|&s| {
            let v = phi_tilde(phi, s, quad)?;
            let m = v.norm();
            Ok(ProductionRow { s, re: v.re, im: v.im, elastic_modulus: m, elastic_mod_squared: v.norm_sqr() })
        })
        .collect::<Result<Vec<_>, ScatterError>>()?;
    let min_modulus = rows.iter().fold(T::infinity(), |m, r| m.min(r.elastic_modulus));
    let bound_ok = rows.iter().all(|r| r.elastic_modulus <= T::one() + T::lit(BOUND_SLACK));
    let production = min_modulus < T::one() - T::lit(10.0) * quad.tol;
    Ok(ProductionReport { phi: phi.to_string(), tol: quad.tol, rows, bound_ok, production, min_modulus })
}
