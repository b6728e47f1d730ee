//! The (1,1) sector of the deformed S-matrix: the embedding of one-boson
//! wavefunctions, the line-average projection `e0`, the one-sided action of
//! `V_phi`, and the elastic amplitude `phi_tilde`.
//!
//! Block-to-multiplier map of `M_phi` on `H_+ (x) H_-`:
//!
//! | block            | multiplier                 |
//! |------------------|----------------------------|
//! | `P_+ (x) P_+`    | `phi(p pbar)`              |
//! | `P_+ (x) P_-`    | `phi_check(q pbar)`        |
//! | `P_- (x) P_+`    | `phi_check(p qbar)`        |
//! | `P_- (x) P_-`    | `phi(q qbar)`              |
//!
//! On the product of two (1,1) sectors the four blocks combine into
//! [`s_phi_4pt`].

mod production;

pub use production::{
    collapse_defect, log_grid, phi_prime, phi_tilde, production_report, ProductionReport, ProductionRow, BOUND_SLACK,
};

use crate::inner::InnerFunction;
use crate::quadrature::{composite_rule, integrate_1d, pairwise_sum_real, QuadratureError, QuadratureSpec};
use crate::scalar::Real;
use num_complex::Complex;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatterError {
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("degenerate state: {0}")]
    DegenerateState(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Sample<T> = Result<Complex<T>, ScatterError>;

/// Quadrature grid on `(0, p_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    p_max: T,
}

impl<T: Real> Grid1D<T> {
    pub fn new(nodes: Vec<T>, weights: Vec<T>, p_max: T) -> Result<Self, ScatterError> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return Err(ScatterError::InvalidGrid("node and weight counts differ or are zero".into()));
        }
        if !(nodes[0] > T::zero()) || nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(ScatterError::InvalidGrid("nodes must be positive and strictly increasing".into()));
        }
        if weights.iter().any(|w| !(*w > T::zero())) {
            return Err(ScatterError::InvalidGrid("weights must be positive".into()));
        }
        if nodes[nodes.len() - 1] > p_max {
            return Err(ScatterError::InvalidGrid("node beyond p_max".into()));
        }
        Ok(Self { nodes, weights, p_max })
    }

    /// `panels` Gauss–Legendre panels of `order` nodes on `(0, p_max]`.
    pub fn gauss_legendre(p_max: T, panels: usize, order: usize) -> Result<Self, ScatterError> {
        if !(p_max > T::zero()) || panels == 0 || order == 0 {
            return Err(ScatterError::InvalidGrid("need p_max > 0 and a nonempty rule".into()));
        }
        let (nodes, weights) = composite_rule(&[T::zero(), p_max], panels, order);
        Self::new(nodes, weights, p_max)
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn p_max(&self) -> T {
        self.p_max
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

impl<T: Real> Default for Grid1D<T> {
    /// 64 nodes on `(0, 20]`.
    fn default() -> Self {
        Self::gauss_legendre(T::lit(20.0), 8, 8).expect("default grid")
    }
}

/// One-boson wavefunction `s -> Psi(s)`, square integrable for `s ds`.
#[derive(Clone)]
pub struct BoseWave<T> {
    sampler: Arc<dyn Fn(T) -> Complex<T> + Send + Sync>,
}

impl<T: Real> BoseWave<T> {
    pub fn new(sampler: impl Fn(T) -> Complex<T> + Send + Sync + 'static) -> Self {
        Self { sampler: Arc::new(sampler) }
    }

    /// `e^{-rate s}`.
    pub fn exponential(rate: T) -> Self {
        Self::new(move |s: T| Complex::new((-rate * s).exp(), T::zero()))
    }

    pub fn zero() -> Self {
        Self::new(|_| Complex::new(T::zero(), T::zero()))
    }

    pub fn sample(&self, s: T) -> Complex<T> {
        (self.sampler)(s)
    }

    /// `(∫ |Psi(s)|^2 s ds)^{1/2}` on the grid.
    pub fn norm(&self, grid: &Grid1D<T>) -> T {
        let terms: Vec<T> = grid.iter().map(|(s, w)| w * s * self.sample(s).norm_sqr()).collect();
        pairwise_sum_real(&terms).sqrt()
    }
}

/// Two-variable wavefunction `(p, q) -> f(p, q)` of the (1,1) sector.
///
/// `breaks` lists coordinate values at which `f` may fail to be smooth in
/// either variable; line integrals split there.
#[derive(Clone)]
pub struct Kernel11<T> {
    sampler: Arc<dyn Fn(T, T) -> Sample<T> + Send + Sync>,
    breaks: Vec<T>,
}

impl<T: Real> Kernel11<T> {
    pub fn new(sampler: impl Fn(T, T) -> Sample<T> + Send + Sync + 'static) -> Self {
        Self { sampler: Arc::new(sampler), breaks: Vec::new() }
    }

    /// Infallible sampler.
    pub fn from_fn(f: impl Fn(T, T) -> Complex<T> + Send + Sync + 'static) -> Self {
        Self::new(move |p, q| Ok(f(p, q)))
    }

    pub fn with_breaks(mut self, breaks: Vec<T>) -> Self {
        self.breaks = breaks;
        self
    }

    /// Indicator of the square `[0, side]^2`.
    pub fn indicator_square(side: T) -> Self {
        Self::from_fn(move |p, q| {
            let inside = p >= T::zero() && q >= T::zero() && p <= side && q <= side;
            Complex::new(if inside { T::one() } else { T::zero() }, T::zero())
        })
        .with_breaks(vec![side])
    }

    pub fn sample(&self, p: T, q: T) -> Sample<T> {
        (self.sampler)(p, q)
    }

    pub fn breaks(&self) -> &[T] {
        &self.breaks
    }
}

/// Values on the triangle `p + q <= p_max`, parametrized by the total
/// `s` (outer grid) and the fraction `u = q / s` (inner grid).
pub struct TriangleSamples<T> {
    /// `(s, s-weight, [(u-weight, value)])`
    pub lines: Vec<(T, T, Vec<(T, Complex<T>)>)>,
}

impl<T: Real> TriangleSamples<T> {
    pub fn sample(f: &Kernel11<T>, s_grid: &Grid1D<T>, u_grid: &Grid1D<T>) -> Result<Self, ScatterError> {
        let lines = s_grid
            .iter()
            .map(|(s, ws)| {
                let row = u_grid
                    .iter()
                    .map(|(u, wu)| Ok((wu, f.sample(s * (T::one() - u), s * u)?)))
                    .collect::<Result<Vec<_>, ScatterError>>()?;
                Ok((s, ws, row))
            })
            .collect::<Result<Vec<_>, ScatterError>>()?;
        Ok(Self { lines })
    }

    /// `∫∫ |g|^2 dp dq` where `g` is computed from each sample and its `s`.
    pub fn integrate_sqr(&self, g: impl Fn(T, Complex<T>) -> Complex<T>) -> T {
        let terms: Vec<T> = self
            .lines
            .iter()
            .map(|(s, ws, row)| {
                let inner: Vec<T> = row.iter().map(|(wu, v)| *wu * g(*s, *v).norm_sqr()).collect();
                *ws * *s * pairwise_sum_real(&inner)
            })
            .collect();
        pairwise_sum_real(&terms)
    }
}

/// Unit-interval grid for the `u` fraction, matching the default resolution.
pub fn unit_grid<T: Real>() -> Grid1D<T> {
    Grid1D::gauss_legendre(T::one(), 8, 8).expect("unit grid")
}

/// `(p, q) -> -(1/2 pi) Psi(p + q)`.
pub fn iota_embed<T: Real>(psi: &BoseWave<T>) -> Kernel11<T> {
    let psi = psi.clone();
    let c = -T::one() / T::TAU();
    Kernel11::from_fn(move |p, q| psi.sample(p + q) * c)
}

/// `(1/s) ∫_0^s f(s - x, x) dx` with `s = p + q`; `f(0, 0)` at `s = 0`.
pub fn e0_line_average<T: Real>(f: &Kernel11<T>, s: T, quad: &QuadratureSpec<T>) -> Sample<T> {
    if s < T::zero() {
        return Err(ScatterError::NonPositive { what: "p + q", value: s.to_f64_lossy() });
    }
    if s == T::zero() {
        return f.sample(T::zero(), T::zero());
    }
    let mut cuts = Vec::with_capacity(2 * f.breaks.len());
    for b in &f.breaks {
        cuts.push(*b);
        cuts.push(s - *b);
    }
    let inv = T::one() / s;
    let spec = QuadratureSpec { tol: quad.tol * s, ..*quad };
    integrate_1d(|x| f.sample(s - x, x), T::zero(), s, &cuts, &spec).map(|v| v * inv)
}

/// Line-average projection onto functions of `p + q`.
pub fn e0_project<T: Real>(f: &Kernel11<T>, quad: &QuadratureSpec<T>) -> Kernel11<T> {
    let f = f.clone();
    let quad = *quad;
    Kernel11::new(move |p, q| e0_line_average(&f, p + q, &quad))
}

/// `(p, q) -> phi(p) phi_check(q) f(p, q)`.
pub fn v_phi_11<T: Real>(phi: &InnerFunction<T>, f: &Kernel11<T>) -> Kernel11<T> {
    let phi = phi.clone();
    let g = f.clone();
    Kernel11::new(move |p, q| Ok(phi.eval(p) * phi.eval_check(q) * g.sample(p, q)?)).with_breaks(f.breaks.clone())
}

/// `||(1 - e0) V_phi iota(Psi)|| / ||V_phi iota(Psi)||` in `L^2(dp dq)` on the
/// triangle `p + q <= grid.p_max()`.
pub fn lw_invariance_residual<T: Real>(
    phi: &InnerFunction<T>,
    psi: &BoseWave<T>,
    grid: &Grid1D<T>,
    quad: &QuadratureSpec<T>,
) -> Result<T, ScatterError> {
    let v = v_phi_11(phi, &iota_embed(psi));
    let samples = TriangleSamples::sample(&v, grid, &unit_grid())?;
    let total = samples.integrate_sqr(|_, x| x);
    if !(total > T::zero()) {
        return Err(ScatterError::DegenerateState("V_phi iota(Psi) vanishes on the grid".into()));
    }
    let averages = grid
        .nodes()
        .iter()
        .map(|&s| e0_line_average(&v, s, quad))
        .collect::<Result<Vec<_>, _>>()?;
    let lookup = |s: T| {
        let k = grid.nodes().iter().position(|&n| n == s).expect("grid node");
        averages[k]
    };
    let off = samples.integrate_sqr(|s, x| x - lookup(s));
    Ok((off / total).sqrt())
}

/// Relative `L^2` distance `||a - b|| / ||reference||` on the triangle.
pub fn triangle_distance<T: Real>(
    a: &Kernel11<T>,
    b: &Kernel11<T>,
    reference: &Kernel11<T>,
    grid: &Grid1D<T>,
) -> Result<T, ScatterError> {
    let u = unit_grid();
    let sa = TriangleSamples::sample(a, grid, &u)?;
    let sb = TriangleSamples::sample(b, grid, &u)?;
    let sr = TriangleSamples::sample(reference, grid, &u)?;
    let diff = TriangleSamples {
        lines: sa
            .lines
            .into_iter()
            .zip(sb.lines)
            .map(|((s, w, ra), (_, _, rb))| {
                (s, w, ra.into_iter().zip(rb).map(|((wu, x), (_, y))| (wu, x - y)).collect())
            })
            .collect(),
    };
    let norm = sr.integrate_sqr(|_, x| x);
    if !(norm > T::zero()) {
        return Err(ScatterError::DegenerateState("reference kernel vanishes on the grid".into()));
    }
    Ok((diff.integrate_sqr(|_, x| x) / norm).sqrt())
}

/// `phi(p pbar) phi_check(q pbar) phi_check(p qbar) phi(q qbar)`.
pub fn s_phi_4pt<T: Real>(phi: &InnerFunction<T>, p: T, q: T, pbar: T, qbar: T) -> Complex<T> {
    phi.eval(p * pbar) * phi.eval_check(q * pbar) * phi.eval_check(p * qbar) * phi.eval(q * qbar)
}
