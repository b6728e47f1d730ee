//! Composite Gauss–Legendre rules with panel doubling, for complex-valued
//! integrands on intervals and rectangles.
//!
//! Reductions are pairwise over a fixed node order, so results do not depend
//! on the number of worker threads.

use crate::scalar::Real;
use num_complex::Complex;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("no convergence after {panels} panels per axis (last change {last_change:e}, tol {tol:e})")]
    NonConvergence { panels: usize, last_change: f64, tol: f64 },
    #[error("invalid quadrature setting: {0}")]
    InvalidSpec(String),
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// by Newton iteration on the three-term recurrence.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1, "rule needs at least one node");
    let nt = T::from_usize(n).expect("rule size");
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let eps = T::epsilon() * T::lit(4.0);
    for i in 0..n.div_ceil(2) {
        let guess = (T::PI() * (T::lit(i as f64) + T::lit(0.75)) / (nt + T::lit(0.5))).cos();
        let mut x = guess;
        let mut dp = T::one();
        for _ in 0..100 {
            // P_n(x) and P_n'(x)
            let (mut p0, mut p1) = (T::one(), x);
            for k in 2..=n {
                let kt = T::lit(k as f64);
                let p2 = ((T::lit(2.0) * kt - T::one()) * x * p1 - (kt - T::one()) * p0) / kt;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { T::one() } else { p0 };
            dp = nt * (x * pn - pm) / (x * x - T::one());
            let dx = pn / dp;
            x = x - dx;
            if dx.abs() <= eps {
                break;
            }
        }
        let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Pairwise (cascade) sum in a fixed order.
pub fn pairwise_sum<T: Real>(v: &[Complex<T>]) -> Complex<T> {
    match v.len() {
        0 => Complex::new(T::zero(), T::zero()),
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

pub fn pairwise_sum_real<T: Real>(v: &[T]) -> T {
    match v.len() {
        0 => T::zero(),
        1 => v[0],
        n => pairwise_sum_real(&v[..n / 2]) + pairwise_sum_real(&v[n / 2..]),
    }
}

/// Composite Gauss–Legendre with panel doubling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    /// Nodes per panel.
    pub order: usize,
    /// Panels per axis at the first level.
    pub panels: usize,
    /// Doubling stops with an error beyond this many panels per axis.
    pub max_panels: usize,
    /// Absolute change between successive levels accepted as converged.
    pub tol: T,
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self { order: 8, panels: 8, max_panels: 1 << 10, tol: T::lit(1e-7) }
    }
}

impl<T: Real> QuadratureSpec<T> {
    pub fn with_tol(tol: T) -> Self {
        Self { tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        if self.order == 0 || self.panels == 0 || self.max_panels < self.panels {
            return Err(QuadratureError::InvalidSpec(format!(
                "order {} panels {} max_panels {}",
                self.order, self.panels, self.max_panels
            )));
        }
        if !(self.tol > T::zero()) {
            return Err(QuadratureError::InvalidSpec("tol must be positive".into()));
        }
        Ok(())
    }
}

/// Nodes and weights of a composite rule over consecutive segments
/// `[cuts[k], cuts[k+1]]`, `panels` panels per segment.
pub fn composite_rule<T: Real>(cuts: &[T], panels: usize, order: usize) -> (Vec<T>, Vec<T>) {
    let (x, w) = gauss_legendre::<T>(order);
    let mut nodes = Vec::with_capacity((cuts.len() - 1) * panels * order);
    let mut weights = Vec::with_capacity(nodes.capacity());
    let pt = T::from_usize(panels).expect("panel count");
    for seg in cuts.windows(2) {
        let h = (seg[1] - seg[0]) / pt;
        for k in 0..panels {
            let a = seg[0] + h * T::from_usize(k).expect("panel index");
            let half = h / T::lit(2.0);
            let mid = a + half;
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(mid + half * *xi);
                weights.push(half * *wi);
            }
        }
    }
    (nodes, weights)
}

/// Segment boundaries of `[a, b]` split at the interior `breaks`.
pub fn cut_points<T: Real>(a: T, b: T, breaks: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut cuts = vec![a, b];
    let span = b - a;
    for x in breaks {
        if x > a + span * T::epsilon() * T::lit(16.0) && x < b - span * T::epsilon() * T::lit(16.0) {
            cuts.push(x);
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).expect("finite break"));
    cuts.dedup();
    cuts
}

/// `∫_a^b f` with doubling until successive levels agree to `spec.tol`.
pub fn integrate_1d<T, E, F>(
    f: F,
    a: T,
    b: T,
    breaks: &[T],
    spec: &QuadratureSpec<T>,
) -> Result<Complex<T>, E>
where
    T: Real,
    E: From<QuadratureError>,
    F: Fn(T) -> Result<Complex<T>, E>,
{
    spec.validate()?;
    let cuts = cut_points(a, b, breaks.iter().copied());
    let level = |panels: usize| -> Result<Complex<T>, E> {
        let (x, w) = composite_rule(&cuts, panels, spec.order);
        let terms = x
            .iter()
            .zip(&w)
            .map(|(xi, wi)| f(*xi).map(|v| v * *wi))
            .collect::<Result<Vec<_>, E>>()?;
        Ok(pairwise_sum(&terms))
    };
    doubling(spec, level)
}

/// `∫_{ax}^{bx} ∫_{ay}^{by} f(x, y) dy dx`, doubling both axes together.
/// Rows are evaluated in parallel.
pub fn integrate_2d<T, E, F>(
    f: F,
    (ax, bx): (T, T),
    (ay, by): (T, T),
    spec: &QuadratureSpec<T>,
) -> Result<Complex<T>, E>
where
    T: Real,
    E: From<QuadratureError> + Send,
    F: Fn(T, T) -> Result<Complex<T>, E> + Sync,
{
    spec.validate()?;
    let level = |panels: usize| -> Result<Complex<T>, E> {
        let (x, wx) = composite_rule(&[ax, bx], panels, spec.order);
        let (y, wy) = composite_rule(&[ay, by], panels, spec.order);
        let rows = x
            .par_iter()
            .zip(wx.par_iter())
            .map(|(xi, wxi)| {
                let row = y
                    .iter()
                    .zip(&wy)
                    .map(|(yj, wyj)| f(*xi, *yj).map(|v| v * *wyj))
                    .collect::<Result<Vec<_>, E>>()?;
                Ok(pairwise_sum(&row) * *wxi)
            })
            .collect::<Result<Vec<_>, E>>()?;
        Ok(pairwise_sum(&rows))
    };
    doubling(spec, level)
}

fn doubling<T: Real, E: From<QuadratureError>>(
    spec: &QuadratureSpec<T>,
    mut level: impl FnMut(usize) -> Result<Complex<T>, E>,
) -> Result<Complex<T>, E> {
    let mut panels = spec.panels;
    let mut prev = level(panels)?;
    let mut change = T::infinity();
    while panels * 2 <= spec.max_panels {
        panels *= 2;
        let next = level(panels)?;
        change = (next - prev).norm();
        if change < spec.tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(QuadratureError::NonConvergence {
        panels,
        last_change: change.to_f64_lossy(),
        tol: spec.tol.to_f64_lossy(),
    }
    .into())
}

#[cfg(test)]
mod tests {
    use super::*;

    type R = Result<Complex<f64>, QuadratureError>;

    #[test]
    fn gl_rules_integrate_polynomials_exactly() {
        for n in 1..=12 {
            let (x, w) = gauss_legendre::<f64>(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14, "n={n}");
            for deg in 0..2 * n {
                let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn gl_rule_in_f32() {
        let (_, w) = gauss_legendre::<f32>(8);
        assert!((w.iter().sum::<f32>() - 2.0).abs() < 1e-5);
    }

    #[test]
    fn oscillatory_integral() {
        let spec = QuadratureSpec::<f64>::default();
        let v: Complex<f64> = integrate_1d(|x| -> R { Ok(Complex::from_polar(1.0, 5.0 * x)) }, 0.0, 3.0, &[], &spec).unwrap();
        let exact = (Complex::from_polar(1.0, 15.0) - 1.0) / Complex::new(0.0, 5.0);
        assert!((v - exact).norm() < 1e-12);
    }

    #[test]
    fn breaks_make_step_functions_exact() {
        let spec = QuadratureSpec::<f64>::default();
        let step = |x: f64| -> R { Ok(Complex::new(if x < 1.3 { 1.0 } else { 0.0 }, 0.0)) };
        let v = integrate_1d(step, 0.0, 2.0, &[1.3], &spec).unwrap();
        assert!((v.re - 1.3).abs() < 1e-14);
    }

    #[test]
    fn two_dimensional() {
        let spec = QuadratureSpec::<f64>::default();
        let v = integrate_2d(|x, y| -> R { Ok(Complex::new((x * y).cos(), 0.0)) }, (0.0, 1.0), (0.0, 2.0), &spec).unwrap();
        // ∫0^1 sin(2x)/x dx = Si(2)
        assert!((v.re - 1.605_412_976_802_694_8).abs() < 1e-10);
    }

    #[test]
    fn non_convergence_is_reported() {
        let spec = QuadratureSpec { order: 2, panels: 1, max_panels: 4, tol: 1e-14 };
        let r = integrate_1d(|x: f64| -> R { Ok(Complex::new((40.0 * x).sin(), 0.0)) }, 0.0, 10.0, &[], &spec);
        assert!(matches!(r, Err(QuadratureError::NonConvergence { panels: 4, .. })));
        let bad = QuadratureSpec { order: 0, ..QuadratureSpec::<f64>::default() };
        assert!(matches!(
            integrate_1d(|_x: f64| -> R { Ok(Complex::new(1.0, 0.0)) }, 0.0, 1.0, &[], &bad),
            Err(QuadratureError::InvalidSpec(_))
        ));
    }

    #[test]
    fn pairwise_matches_naive() {
        let v: Vec<Complex<f64>> = (0..1000).map(|k| Complex::new(k as f64, -(k as f64))).collect();
        assert_eq!(pairwise_sum(&v), Complex::new(499500.0, -499500.0));
    }
}
