//! Half-line invariance of `phi(P)` checked on a periodic sampling grid.
//!
//! Fourier convention: `f(s) = ∫ e^{-isp} f̂(p) dp`, so `phi(P) f` has
//! transform `phi(p) f̂(p)` and `e^{i kappa p}` translates to the right by
//! `kappa`. The signal is sampled on `x_j = j h`, `j` wrapped into
//! `[-L/2, L/2)`, transformed with an unnormalized FFT, multiplied by
//! `phi` at the discrete momenta and transformed back.

use super::{InnerError, InnerFunction};
use crate::scalar::Real;
use num_complex::Complex;
use rustfft::FftPlanner;
use std::sync::Arc;

/// Signal supported on the closed right half-line.
#[derive(Clone)]
pub struct HalfLineSignal<T> {
    name: String,
    sampler: Arc<dyn Fn(T) -> Complex<T> + Send + Sync>,
}

impl<T: Real> HalfLineSignal<T> {
    pub fn new(name: impl Into<String>, sampler: impl Fn(T) -> Complex<T> + Send + Sync + 'static) -> Self {
        Self { name: name.into(), sampler: Arc::new(sampler) }
    }

    /// `e^{-rate x}` for `x > 0`, zero for `x < 0`, midpoint value at the jump.
    pub fn decaying_exponential(rate: T) -> Self {
        Self::new(format!("exp(-{}x)1[x>0]", rate.to_f64_lossy()), move |x: T| {
            let v = if x > T::zero() {
                (-rate * x).exp()
            } else if x == T::zero() {
                T::lit(0.5)
            } else {
                T::zero()
            };
            Complex::new(v, T::zero())
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sample(&self, x: T) -> Complex<T> {
        (self.sampler)(x)
    }
}

/// `points` samples over a window of length `window` centred at 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalityGrid<T> {
    pub points: usize,
    pub window: T,
    pub tol: T,
}

impl<T: Real> Default for CausalityGrid<T> {
    fn default() -> Self {
        Self { points: 1 << 14, window: T::lit(80.0), tol: T::lit(1e-4) }
    }
}

impl<T: Real> CausalityGrid<T> {
    pub fn spacing(&self) -> T {
        self.window / T::from_usize(self.points).expect("grid size")
    }

    /// Finest spacing the check accepts.
    pub fn max_spacing() -> T {
        T::lit(1.0 / 32.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CausalityOutcome<T> {
    /// `sum_{x<0} |g|^2 / sum |g|^2` of the output `g = phi(P) f`.
    pub leakage: T,
    /// Same ratio for the input, which should be zero.
    pub input_leakage: T,
    /// Output samples at `x_j = (j - N/2) h`, ascending.
    pub output: Vec<(T, Complex<T>)>,
}

impl<T: Real> CausalityOutcome<T> {
    pub fn passes(&self, tol: T) -> bool {
        self.leakage < tol
    }
}

fn negative_mass<T: Real>(values: &[Complex<T>]) -> T {
    let n = values.len();
    let (mut neg, mut all) = (T::zero(), T::zero());
    for (j, v) in values.iter().enumerate() {
        let m = v.norm_sqr();
        all = all + m;
        if j >= n / 2 {
            neg = neg + m;
        }
    }
    if all > T::zero() {
        neg / all
    } else {
        T::zero()
    }
}

/// Relative mass of `phi(P) f` on the left half-line.
pub fn causality_check<T: Real>(
    phi: &InnerFunction<T>,
    f: &HalfLineSignal<T>,
    grid: CausalityGrid<T>,
) -> Result<CausalityOutcome<T>, InnerError> {
    let n = grid.points;
    let h = grid.spacing();
    if n < 256 || n % 2 == 1 {
        return Err(InnerError::GridTooCoarse(format!("{n} points; need an even count >= 256")));
    }
    if !(h <= CausalityGrid::<T>::max_spacing()) {
        return Err(InnerError::GridTooCoarse(format!(
            "spacing {} exceeds {}",
            h.to_f64_lossy(),
            CausalityGrid::<T>::max_spacing().to_f64_lossy()
        )));
    }
    let x_of = |j: usize| {
        let k = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
        T::lit(k) * h
    };
    let mut buf: Vec<Complex<T>> = (0..n).map(|j| f.sample(x_of(j))).collect();
    let edge = buf[n / 2 - 1].norm();
    let peak = buf.iter().fold(T::zero(), |m, v| m.max(v.norm()));
    if edge > T::lit(1e-8) * peak {
        return Err(InnerError::GridTooCoarse(format!(
            "window {} truncates the signal (edge/peak {:e})",
            grid.window.to_f64_lossy(),
            (edge / peak).to_f64_lossy()
        )));
    }
    let input_leakage = negative_mass(&buf);

    let mut planner = FftPlanner::<T>::new();
    // spectrum F_k = sum_j f_j e^{+i p_k x_j}
    planner.plan_fft_inverse(n).process(&mut buf);
    let dp = T::TAU() / grid.window;
    for (k, v) in buf.iter_mut().enumerate() {
        let p = x_of(k) / h * dp;
        *v = *v * phi.eval(p);
    }
    // g_j = (1/N) sum_k G_k e^{-i p_k x_j}
    planner.plan_fft_forward(n).process(&mut buf);
    let scale = T::one() / T::from_usize(n).expect("grid size");
    buf.iter_mut().for_each(|v| *v = *v * scale);

    let leakage = negative_mass(&buf);
    let mut output: Vec<(T, Complex<T>)> = (0..n).map(|j| (x_of(j), buf[j])).collect();
    output.rotate_left(n / 2);
    Ok(CausalityOutcome { leakage, input_leakage, output })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Phi = InnerFunction<f64>;

    fn signal() -> HalfLineSignal<f64> {
        HalfLineSignal::decaying_exponential(1.0)
    }

    #[test]
    fn identity_leaves_signal_unchanged() {
        let out = causality_check(&Phi::identity(), &signal(), CausalityGrid::default()).unwrap();
        assert!(out.leakage < 1e-25);
        for (x, g) in out.output.iter().step_by(97) {
            assert!((g - signal().sample(*x)).norm() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn exponential_translates_right() {
        let grid = CausalityGrid::default();
        let kappa = 1.0;
        let out = causality_check(&Phi::exponential(kappa, 0.0).unwrap(), &signal(), grid).unwrap();
        assert!(out.leakage < 1e-6, "{}", out.leakage);
        // kappa = 1 is 204.8 grid steps; compare at grid points away from the jump
        for (x, g) in out.output.iter().step_by(101) {
            if (x - kappa).abs() > 0.5 {
                let want = signal().sample(x - kappa);
                assert!((g - want).norm() < 1e-3, "x={x} got {g} want {want}");
            }
        }
    }

    #[test]
    fn blaschke_output_matches_residue_formula() {
        // Oracle: for phi = (p - i)/(p + i) and f = e^{-x} 1[x>0] the residue
        // theorem gives g(x) = e^{-x} (1 - 2x) for x > 0 and 0 for x < 0.
        let phi = Phi::blaschke(vec![Complex::new(0.0, 1.0)]).unwrap();
        let out = causality_check(&phi, &signal(), CausalityGrid::default()).unwrap();
        assert!(out.leakage < 1e-4);
        for (x, g) in out.output.iter().step_by(53) {
            let want = if *x > 0.0 { (-x).exp() * (1.0 - 2.0 * x) } else { 0.0 };
            if x.abs() > 0.2 {
                assert!((g.re - want).abs() < 1e-3 && g.im.abs() < 1e-3, "x={x} g={g} want={want}");
            }
        }
    }

    #[test]
    fn coarse_grids_are_reported() {
        let phi = Phi::identity();
        let coarse = CausalityGrid { points: 64, window: 80.0, tol: 1e-4 };
        assert!(matches!(causality_check(&phi, &signal(), coarse), Err(InnerError::GridTooCoarse(_))));
        let sparse = CausalityGrid { points: 1024, window: 80.0, tol: 1e-4 };
        assert!(matches!(causality_check(&phi, &signal(), sparse), Err(InnerError::GridTooCoarse(_))));
        let short = CausalityGrid { points: 1 << 12, window: 8.0, tol: 1e-4 };
        assert!(matches!(causality_check(&phi, &signal(), short), Err(InnerError::GridTooCoarse(_))));
    }
}
