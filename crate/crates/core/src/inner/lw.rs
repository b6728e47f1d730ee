use super::InnerFunction;
use crate::scalar::Real;
use num_complex::Complex;

/// Symmetric and antisymmetric parts `a = (phi + phi_check)/2`,
/// `b = (phi - phi_check)/2` at real `p`.
pub fn sym_parts<T: Real>(phi: &InnerFunction<T>, p: T) -> (Complex<T>, Complex<T>) {
    let f = phi.eval(p);
    let g = phi.eval_check(p);
    let half = T::lit(0.5);
    ((f + g) * half, (f - g) * half)
}

type Mat2<T> = [[Complex<T>; 2]; 2];

fn mat_mul<T: Real>(x: &Mat2<T>, y: &Mat2<T>) -> Mat2<T> {
    let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

fn mat_adjoint<T: Real>(x: &Mat2<T>) -> Mat2<T> {
    [[x[0][0].conj(), x[1][0].conj()], [x[0][1].conj(), x[1][1].conj()]]
}

fn max_dist<T: Real>(x: &Mat2<T>, y: &Mat2<T>) -> T {
    let mut m = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((x[i][j] - y[i][j]).norm());
        }
    }
    m
}

/// The gauge-commuting 2x2 matrix `[[a, i b], [-i b, a]]` at one momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LWMatrix<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
}

impl<T: Real> LWMatrix<T> {
    pub fn matrix(&self) -> Mat2<T> {
        let i = Complex::new(T::zero(), T::one());
        [[self.a, i * self.b], [-i * self.b, self.a]]
    }

    /// `max |(M M^*)_{jk} - delta_{jk}|`.
    pub fn unitarity_defect(&self) -> T {
        let m = self.matrix();
        max_dist(&mat_mul(&m, &mat_adjoint(&m)), &identity())
    }

    /// `U M U^*` with `U = (1/sqrt 2) [[1, i], [i, 1]]`; diagonal with entries
    /// `a + b` and `a - b`.
    pub fn diagonalized(&self) -> Mat2<T> {
        let s = T::one() / (T::one() + T::one()).sqrt();
        let one = Complex::new(s, T::zero());
        let i = Complex::new(T::zero(), s);
        let u = [[one, i], [i, one]];
        mat_mul(&mat_mul(&u, &self.matrix()), &mat_adjoint(&u))
    }

    /// Distance of `U M U^*` from `diag(phi(p), phi_check(p))`.
    pub fn diagonalization_defect(&self, phi: Complex<T>, phi_check: Complex<T>) -> T {
        let zero = Complex::new(T::zero(), T::zero());
        max_dist(&self.diagonalized(), &[[phi, zero], [zero, phi_check]])
    }
}

fn identity<T: Real>() -> Mat2<T> {
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    [[one, zero], [zero, one]]
}

pub fn lw_matrix<T: Real>(phi: &InnerFunction<T>, p: T) -> LWMatrix<T> {
    let (a, b) = sym_parts(phi, p);
    LWMatrix { a, b }
}

/// Two momentum pairs with the same total, `(p1, q1)` and `(p2, q2)`.
pub type ProbePair<T> = ((T, T), (T, T));

/// Pairs with equal sums used when no explicit samples are given.
pub fn standard_probe_pairs<T: Real>() -> Vec<ProbePair<T>> {
    let mut out = Vec::new();
    for s in [0.5, 1.0, 2.0, 4.0, 7.5] {
        for (u, v) in [(0.25, 0.5), (0.1, 0.9), (0.3, 0.6)] {
            out.push(((T::lit(u * s), T::lit((1.0 - u) * s)), (T::lit(v * s), T::lit((1.0 - v) * s))));
        }
    }
    out.push(((T::lit(1.0), T::lit(3.0)), (T::lit(2.0), T::lit(2.0))));
    out
}

/// `max |phi(p1) phi_check(q1) - phi(p2) phi_check(q2)|` over pairs with
/// `p1 + q1 = p2 + q2`. Vanishes for exponentials only.
pub fn functional_equation_probe<T: Real>(phi: &InnerFunction<T>, samples: &[ProbePair<T>]) -> T {
    samples.iter().fold(T::zero(), |acc, ((p1, q1), (p2, q2))| {
        let lhs = phi.eval(*p1) * phi.eval_check(*q1);
        let rhs = phi.eval(*p2) * phi.eval_check(*q2);
        acc.max((lhs - rhs).norm())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Phi = InnerFunction<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn grid() -> impl Iterator<Item = f64> {
        (0..101).map(|k| -10.0 + 0.2 * k as f64)
    }

    #[test]
    fn exponential_has_no_antisymmetric_part() {
        let e = Phi::exponential(1.3, 0.0).unwrap();
        for p in grid() {
            let (a, b) = sym_parts(&e, p);
            assert!(b.norm() < 1e-15);
            assert!((a - e.eval(p)).norm() < 1e-15);
        }
    }

    #[test]
    fn parts_identities() {
        let phi = Phi::blaschke(vec![c(1.0, 1.0)]).unwrap();
        let (a, b) = sym_parts(&phi, 1.0);
        assert!((a + b - phi.eval(1.0)).norm() < 1e-15);
        for p in grid() {
            let (a, b) = sym_parts(&phi, p);
            let (am, bm) = sym_parts(&phi, -p);
            assert!((am - a.conj()).norm() < 1e-12, "a symmetric");
            assert!((bm + b.conj()).norm() < 1e-12, "b antisymmetric");
            assert!((a - b - phi.eval_check(p)).norm() < 1e-12);
            assert!((a.norm_sqr() + b.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_gives_identity_matrix() {
        let m = lw_matrix(&Phi::identity(), 0.7).matrix();
        assert_eq!(m, identity());
    }

    #[test]
    fn unitary_and_diagonalized() {
        let phi = Phi::blaschke(vec![c(1.0, 1.0)]).unwrap();
        let m = lw_matrix(&phi, 2.0);
        let d = m.diagonalized();
        assert!((d[0][0] - phi.eval(2.0)).norm() < 1e-12);
        assert!((d[1][1] - phi.check_conjugate().eval(2.0)).norm() < 1e-12);
        assert!(d[0][1].norm() < 1e-12 && d[1][0].norm() < 1e-12);
        for p in grid() {
            let m = lw_matrix(&phi, p);
            assert!(m.unitarity_defect() < 1e-12);
            assert!(m.diagonalization_defect(phi.eval(p), phi.eval_check(p)) < 1e-12);
        }
    }

    #[test]
    fn probe_examples() {
        let e = Phi::exponential(1.7, 0.4).unwrap();
        assert!(functional_equation_probe(&e, &standard_probe_pairs()) < 1e-12);
        assert_eq!(functional_equation_probe(&Phi::identity(), &standard_probe_pairs()), 0.0);
        let b = Phi::blaschke(vec![c(0.0, 1.0)]).unwrap();
        let r = functional_equation_probe(&b, &[((1.0, 3.0), (2.0, 2.0))]);
        // phi(1) phi(3) = (-0.6, -0.8), phi(2)^2 = (-0.28, -0.96)
        assert!((r - (0.32f64.powi(2) + 0.16f64.powi(2)).sqrt()).abs() < 1e-12);
        assert!(r > 1e-3);
    }
}
