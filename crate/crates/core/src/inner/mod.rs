//! Inner functions on the upper half-plane and the 2x2 Longo–Witten unitary
//! they induce on the one-particle space of the complex fermion.
//!
//! The catalog is closed under check-conjugation `p -> conj(phi(-p))`:
//! exponentials `e^{i(kappa p + theta)}` with `kappa >= 0`, finite Blaschke
//! products `prod (p - w)/(p - conj(w))` with `Im w > 0`, and finite
//! products of both.

mod causality;
mod lw;
mod parse;

pub use causality::{causality_check, CausalityGrid, CausalityOutcome, HalfLineSignal};
pub use lw::{functional_equation_probe, lw_matrix, standard_probe_pairs, sym_parts, LWMatrix, ProbePair};
pub use parse::{parse_inner, ParseError};

use crate::scalar::Real;
use num_complex::Complex;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InnerError {
    #[error("exponential inner function needs finite kappa >= 0, got {0}")]
    NegativeKappa(f64),
    #[error("Blaschke zero {re}{im:+}i must lie in the open upper half-plane")]
    ZeroNotInUpperHalfPlane { re: f64, im: f64 },
    #[error("non-finite parameter")]
    NonFinite,
    #[error("causality grid too coarse: {0}")]
    GridTooCoarse(String),
}

/// Symbolic inner function.
#[derive(Debug, Clone, PartialEq)]
pub enum InnerFunction<T> {
    /// `e^{i (kappa p + theta)}`.
    Exponential { kappa: T, theta: T },
    /// `prod_j (p - w_j) / (p - conj(w_j))`.
    Blaschke { zeros: Vec<Complex<T>> },
    Product(Vec<InnerFunction<T>>),
}

impl<T: Real> InnerFunction<T> {
    pub fn identity() -> Self {
        InnerFunction::Exponential { kappa: T::zero(), theta: T::zero() }
    }

    pub fn exponential(kappa: T, theta: T) -> Result<Self, InnerError> {
        let f = InnerFunction::Exponential { kappa, theta };
        f.validate()?;
        Ok(f)
    }

    pub fn blaschke(zeros: Vec<Complex<T>>) -> Result<Self, InnerError> {
        let f = InnerFunction::Blaschke { zeros };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), InnerError> {
        match self {
            InnerFunction::Exponential { kappa, theta } => {
                if !kappa.is_finite() || !theta.is_finite() {
                    return Err(InnerError::NonFinite);
                }
                if *kappa < T::zero() {
                    return Err(InnerError::NegativeKappa(kappa.to_f64_lossy()));
                }
                Ok(())
            }
            InnerFunction::Blaschke { zeros } => {
                for w in zeros {
                    if !w.re.is_finite() || !w.im.is_finite() {
                        return Err(InnerError::NonFinite);
                    }
                    if w.im <= T::zero() {
                        return Err(InnerError::ZeroNotInUpperHalfPlane {
                            re: w.re.to_f64_lossy(),
                            im: w.im.to_f64_lossy(),
                        });
                    }
                }
                Ok(())
            }
            InnerFunction::Product(fs) => fs.iter().try_for_each(|f| f.validate()),
        }
    }

    /// Boundary value at real `p`.
    pub fn eval(&self, p: T) -> Complex<T> {
        match self {
            InnerFunction::Exponential { kappa, theta } => Complex::from_polar(T::one(), *kappa * p + *theta),
            InnerFunction::Blaschke { zeros } => {
                let z = Complex::new(p, T::zero());
                zeros
                    .iter()
                    .fold(Complex::new(T::one(), T::zero()), |acc, w| acc * ((z - w) / (z - w.conj())))
            }
            InnerFunction::Product(fs) => fs
                .iter()
                .fold(Complex::new(T::one(), T::zero()), |acc, f| acc * f.eval(p)),
        }
    }

    /// Check-conjugate `p -> conj(phi(-p))`, in closed form.
    pub fn check_conjugate(&self) -> Self {
        match self {
            InnerFunction::Exponential { kappa, theta } => {
                InnerFunction::Exponential { kappa: *kappa, theta: -*theta }
            }
            InnerFunction::Blaschke { zeros } => InnerFunction::Blaschke {
                zeros: zeros.iter().map(|w| -w.conj()).collect(),
            },
            InnerFunction::Product(fs) => InnerFunction::Product(fs.iter().map(|f| f.check_conjugate()).collect()),
        }
    }

    /// `conj(phi(-p))` evaluated directly.
    pub fn eval_check(&self, p: T) -> Complex<T> {
        self.eval(-p).conj()
    }

    /// `(kappa, theta)` if the function is a (product of) exponential(s),
    /// i.e. `e^{i(kappa p + theta)}`; `None` otherwise.
    pub fn exponential_params(&self) -> Option<(T, T)> {
        match self {
            InnerFunction::Exponential { kappa, theta } => Some((*kappa, *theta)),
            InnerFunction::Blaschke { zeros } if zeros.is_empty() => Some((T::zero(), T::zero())),
            InnerFunction::Blaschke { .. } => None,
            InnerFunction::Product(fs) => fs.iter().try_fold((T::zero(), T::zero()), |(k, t), f| {
                let (k2, t2) = f.exponential_params()?;
                Some((k + k2, t + t2))
            }),
        }
    }

    pub fn is_exponential(&self) -> bool {
        self.exponential_params().is_some()
    }

    /// Structural equality up to reordering of Blaschke zeros, with
    /// tolerance `tol` on parameters.
    pub fn approx_same_spec(&self, other: &Self, tol: T) -> bool {
        match (self, other) {
            (
                InnerFunction::Exponential { kappa: k1, theta: t1 },
                InnerFunction::Exponential { kappa: k2, theta: t2 },
            ) => (*k1 - *k2).abs() <= tol && (*t1 - *t2).abs() <= tol,
            (InnerFunction::Blaschke { zeros: a }, InnerFunction::Blaschke { zeros: b }) => {
                a.len() == b.len() && {
                    let mut used = vec![false; b.len()];
                    a.iter().all(|w| {
                        let hit = (0..b.len()).find(|&j| !used[j] && (b[j] - w).norm() <= tol);
                        hit.map(|j| used[j] = true).is_some()
                    })
                }
            }
            (InnerFunction::Product(a), InnerFunction::Product(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_same_spec(y, tol))
            }
            _ => false,
        }
    }
}

impl<T: Real + fmt::Display> fmt::Display for InnerFunction<T> {
    /// Same grammar as [`parse_inner`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerFunction::Exponential { kappa, theta } => write!(f, "exp:kappa={kappa},theta={theta}"),
            InnerFunction::Blaschke { zeros } => {
                f.write_str("blaschke:")?;
                for (j, w) in zeros.iter().enumerate() {
                    if j > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{}+{}i", w.re, w.im)?;
                }
                Ok(())
            }
            InnerFunction::Product(fs) => {
                for (j, g) in fs.iter().enumerate() {
                    if j > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type Phi = InnerFunction<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn samples() -> impl Iterator<Item = f64> {
        (0..=200).map(|k| -25.0 + 0.25 * k as f64)
    }

    fn catalog() -> Vec<Phi> {
        vec![
            Phi::identity(),
            Phi::exponential(1.0, 0.3).unwrap(),
            Phi::blaschke(vec![c(0.0, 1.0)]).unwrap(),
            Phi::blaschke(vec![c(1.0, 1.0), c(-2.0, 0.5)]).unwrap(),
            Phi::Product(vec![Phi::exponential(0.5, 0.0).unwrap(), Phi::blaschke(vec![c(0.0, 2.0)]).unwrap()]),
        ]
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Phi::identity().eval(3.7), c(1.0, 0.0));
        let b = Phi::blaschke(vec![c(0.0, 1.0)]).unwrap();
        assert!((b.eval(0.0) - c(-1.0, 0.0)).norm() < 1e-15);
        let e = Phi::exponential(1.0, 0.0).unwrap();
        assert!((e.eval(PI) - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn unit_modulus_on_real_line() {
        for phi in catalog() {
            for p in samples() {
                assert!((phi.eval(p).norm() - 1.0).abs() < 1e-12, "{phi} at {p}");
            }
        }
    }

    #[test]
    fn check_conjugate_matches_definition_and_is_involution() {
        for phi in catalog() {
            let chk = phi.check_conjugate();
            assert!(chk.check_conjugate().approx_same_spec(&phi, 0.0));
            for p in samples() {
                assert!((chk.eval(p) - phi.eval(-p).conj()).norm() < 1e-12);
                assert!((chk.check_conjugate().eval(p) - phi.eval(p)).norm() < 1e-12);
            }
        }
        let b = Phi::blaschke(vec![c(0.0, 1.0)]).unwrap();
        assert!(b.check_conjugate().approx_same_spec(&b, 0.0));
        let e = Phi::exponential(2.0, 0.0).unwrap();
        assert!(e.check_conjugate().approx_same_spec(&e, 0.0));
        let nb = Phi::blaschke(vec![c(1.0, 1.0)]).unwrap();
        assert!(!nb.check_conjugate().approx_same_spec(&nb, 1e-9));
    }

    #[test]
    fn validation_errors() {
        assert_eq!(Phi::exponential(-1.0, 0.0), Err(InnerError::NegativeKappa(-1.0)));
        assert!(matches!(Phi::blaschke(vec![c(1.0, 0.0)]), Err(InnerError::ZeroNotInUpperHalfPlane { .. })));
        assert!(matches!(Phi::blaschke(vec![c(1.0, -1.0)]), Err(InnerError::ZeroNotInUpperHalfPlane { .. })));
        assert_eq!(Phi::exponential(f64::NAN, 0.0), Err(InnerError::NonFinite));
    }

    #[test]
    fn exponential_classification() {
        let cat = catalog();
        let flags: Vec<bool> = cat.iter().map(|f| f.is_exponential()).collect();
        assert_eq!(flags, vec![true, true, false, false, false]);
        let prod = Phi::Product(vec![Phi::exponential(1.0, 0.5).unwrap(), Phi::exponential(2.0, -0.1).unwrap()]);
        let (k, t) = prod.exponential_params().unwrap();
        assert!((k - 3.0).abs() < 1e-15 && (t - 0.4).abs() < 1e-15);
    }

    #[test]
    fn generic_over_f32() {
        let b = InnerFunction::<f32>::blaschke(vec![Complex::new(0.0f32, 1.0)]).unwrap();
        assert!((b.eval(0.0) - Complex::new(-1.0f32, 0.0)).norm() < 1e-6);
    }
}
