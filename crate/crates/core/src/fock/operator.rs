use super::{FockBasisState, FockError, FockVector, HalfMode};
use crate::scalar::{imag_unit, Field};
use num_complex::Complex;
use num_traits::One;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeKind {
    Psi,
    PsiBar,
}

impl fmt::Display for ModeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeKind::Psi => "psi",
            ModeKind::PsiBar => "psibar",
        })
    }
}

/// `psi_n` or `psibar_n` with `n` a half-integer stored as the odd `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mode {
    pub kind: ModeKind,
    index2: i32,
}

impl Mode {
    pub fn new(kind: ModeKind, index2: i32) -> Result<Self, FockError> {
        if index2.rem_euclid(2) == 1 {
            Ok(Mode { kind, index2 })
        } else {
            Err(FockError::NotHalfInteger(index2))
        }
    }

    pub fn psi(index2: i32) -> Result<Self, FockError> {
        Self::new(ModeKind::Psi, index2)
    }

    pub fn psibar(index2: i32) -> Result<Self, FockError> {
        Self::new(ModeKind::PsiBar, index2)
    }

    pub fn index2(self) -> i32 {
        self.index2
    }

    /// The adjoint mode: `psi_n^* = psibar_{-n}` and vice versa.
    pub fn adjoint(self) -> Self {
        let kind = match self.kind {
            ModeKind::Psi => ModeKind::PsiBar,
            ModeKind::PsiBar => ModeKind::Psi,
        };
        Mode { kind, index2: -self.index2 }
    }

    /// Action on a basis state: `None` for zero, otherwise `(negative sign?, state)`.
    ///
    /// Negative index creates in the own block, positive index annihilates in
    /// the conjugate block. The sign is `(-1)^k` where `k` counts the occupied
    /// modes standing to the left of the affected slot in canonical order.
    pub fn act(self, s: &FockBasisState) -> Option<(bool, FockBasisState)> {
        let label = HalfMode(self.index2.unsigned_abs());
        let creates = self.index2 < 0;
        // block touched: psi-creation / psibar-annihilation (i.e. psibar_{n>0}
        // removes a psi) act on the psi block.
        let on_psi_block = matches!(
            (self.kind, creates),
            (ModeKind::Psi, true) | (ModeKind::PsiBar, false)
        );
        let mut out = s.clone();
        let offset = if on_psi_block { 0 } else { s.psi().len() };
        let block = if on_psi_block { out.psi_mut() } else { out.psibar_mut() };
        let pos = block.binary_search(&label);
        let passed = match (creates, pos) {
            (true, Ok(_)) | (false, Err(_)) => return None,
            (true, Err(p)) => {
                block.insert(p, label);
                p
            }
            (false, Ok(p)) => {
                block.remove(p);
                p
            }
        };
        Some(((offset + passed) % 2 == 1, out))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}/2)", self.kind, self.index2)
    }
}

/// Applies a single mode to a vector.
pub fn apply_mode<F: Field>(mode: Mode, v: &FockVector<F>) -> FockVector<F> {
    let mut out = FockVector::zero();
    for (s, c) in v.terms() {
        if let Some((neg, t)) = mode.act(s) {
            out.add_term(t, if neg { -c.clone() } else { c.clone() });
        }
    }
    out
}

/// Symbolic operator on the finite-energy domain. Every variant acts exactly
/// on basis states; truncation only enters through [`super::BlockMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub enum FockOperator<F> {
    Identity,
    Mode(Mode),
    /// Normal-ordered current `J_n = sum_{r+s=n} :psibar_r psi_s:`.
    Current(i32),
    /// `L0`, the energy.
    Energy,
    /// `Q`, the charge.
    Charge,
    /// `Gamma = (-1)^(k+l)`.
    Parity,
    /// `Z = (1 - i Gamma) / (1 - i)`.
    Twist,
    Scaled(Complex<F>, Box<FockOperator<F>>),
    Sum(Vec<FockOperator<F>>),
    /// `Product([A, B])` is `A B` (B acts first).
    Product(Vec<FockOperator<F>>),
}

impl<F: Field> FockOperator<F> {
    pub fn psi(index2: i32) -> Result<Self, FockError> {
        Mode::psi(index2).map(FockOperator::Mode)
    }

    pub fn psibar(index2: i32) -> Result<Self, FockError> {
        Mode::psibar(index2).map(FockOperator::Mode)
    }

    pub fn scaled(self, c: Complex<F>) -> Self {
        FockOperator::Scaled(c, Box::new(self))
    }

    pub fn then(self, first: Self) -> Self {
        FockOperator::Product(vec![self, first])
    }

    pub fn commutator(a: Self, b: Self) -> Self {
        let minus = Complex::new(-F::one(), F::zero());
        FockOperator::Sum(vec![a.clone().then(b.clone()), b.then(a).scaled(minus)])
    }

    pub fn anticommutator(a: Self, b: Self) -> Self {
        FockOperator::Sum(vec![a.clone().then(b.clone()), b.then(a)])
    }

    pub fn name(&self) -> String {
        match self {
            FockOperator::Identity => "1".into(),
            FockOperator::Mode(m) => m.to_string(),
            FockOperator::Current(n) => format!("J({n})"),
            FockOperator::Energy => "L0".into(),
            FockOperator::Charge => "Q".into(),
            FockOperator::Parity => "Gamma".into(),
            FockOperator::Twist => "Z".into(),
            FockOperator::Scaled(c, op) => format!("({c:?})*{}", op.name()),
            FockOperator::Sum(ops) => {
                let parts: Vec<_> = ops.iter().map(|o| o.name()).collect();
                format!("({})", parts.join(" + "))
            }
            FockOperator::Product(ops) => {
                let parts: Vec<_> = ops.iter().map(|o| o.name()).collect();
                parts.join(" ")
            }
        }
    }

    pub fn apply_state(&self, s: &FockBasisState) -> FockVector<F> {
        match self {
            FockOperator::Identity => FockVector::basis(s.clone()),
            FockOperator::Mode(m) => apply_mode(*m, &FockVector::basis(s.clone())),
            FockOperator::Current(n) => current_on_state(*n, s),
            FockOperator::Energy => {
                let e = F::from_u32(s.energy2()).expect("small integer") / two::<F>();
                FockVector::term(Complex::new(e, F::zero()), s.clone())
            }
            FockOperator::Charge => {
                let q = F::from_i32(s.charge()).expect("small integer");
                FockVector::term(Complex::new(q, F::zero()), s.clone())
            }
            FockOperator::Parity => FockVector::term(parity_of(s), s.clone()),
            FockOperator::Twist => {
                let one = Complex::<F>::one();
                let i = imag_unit::<F>();
                let z = (one.clone() - i.clone() * parity_of::<F>(s)) / (one - i);
                FockVector::term(z, s.clone())
            }
            FockOperator::Scaled(c, op) => op.apply_state(s).scaled(c),
            FockOperator::Sum(ops) => ops
                .iter()
                .fold(FockVector::zero(), |acc, op| acc + op.apply_state(s)),
            FockOperator::Product(ops) => {
                let mut v = FockVector::basis(s.clone());
                for op in ops.iter().rev() {
                    v = op.apply(&v);
                }
                v
            }
        }
    }

    pub fn apply(&self, v: &FockVector<F>) -> FockVector<F> {
        let mut out = FockVector::zero();
        for (s, c) in v.terms() {
            out.add_scaled(c, &self.apply_state(s));
        }
        out
    }
}

fn two<F: Field>() -> F {
    F::one() + F::one()
}

fn parity_of<F: Field>(s: &FockBasisState) -> Complex<F> {
    let sign = if s.fermion_number() % 2 == 0 { F::one() } else { -F::one() };
    Complex::new(sign, F::zero())
}

/// `J_n` on a basis state, using
/// `J_n = sum_{r<0} psibar_r psi_{n-r} - sum_{r>0} psi_{n-r} psibar_r`.
/// Only finitely many terms are nonzero on a finite-energy state:
/// first sum needs `psi_{n-r}` to act nontrivially (create, or annihilate an
/// occupied psibar), second sum needs `psibar_r` to annihilate an occupied psi.
fn current_on_state<F: Field>(n: i32, s: &FockBasisState) -> FockVector<F> {
    let n2 = 2 * n;
    let one = Complex::<F>::one();
    let minus = -one.clone();
    let mut out = FockVector::zero();
    let mut first: Vec<i32> = Vec::new();
    // n - r < 0 with r < 0: n < r < 0
    let mut r2 = -1;
    while r2 > n2 {
        first.push(r2);
        r2 -= 2;
    }
    // n - r = s' > 0 with s' an occupied psibar mode and r = n - s' < 0
    for m in s.psibar() {
        let r2 = n2 - m.doubled() as i32;
        if r2 < 0 {
            first.push(r2);
        }
    }
    let start = FockVector::basis(s.clone());
    for r2 in first {
        let inner = Mode { kind: ModeKind::Psi, index2: n2 - r2 };
        let outer = Mode { kind: ModeKind::PsiBar, index2: r2 };
        out.add_scaled(&one, &apply_mode(outer, &apply_mode(inner, &start)));
    }
    for m in s.psi() {
        let r2 = m.doubled() as i32;
        let inner = Mode { kind: ModeKind::PsiBar, index2: r2 };
        let outer = Mode { kind: ModeKind::Psi, index2: n2 - r2 };
        out.add_scaled(&minus, &apply_mode(outer, &apply_mode(inner, &start)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type V = FockVector<BigRational>;
    type Op = FockOperator<BigRational>;

    fn st(psi: &[u32], psibar: &[u32]) -> FockBasisState {
        FockBasisState::new(psi, psibar).unwrap()
    }

    #[test]
    fn mode_examples() {
        let vac = V::vacuum();
        assert!(apply_mode(Mode::psi(1).unwrap(), &vac).is_zero());
        assert!(apply_mode(Mode::psibar(1).unwrap(), &vac).is_zero());
        let one = apply_mode(Mode::psi(-1).unwrap(), &vac);
        assert_eq!(one, V::basis(st(&[1], &[])));
        assert!(apply_mode(Mode::psi(-1).unwrap(), &one).is_zero());
    }

    #[test]
    fn even_index_rejected() {
        assert_eq!(Mode::psi(2), Err(FockError::NotHalfInteger(2)));
        assert!(Op::psibar(0).is_err());
    }

    #[test]
    fn canonical_signs() {
        // psi_{-1/2} on psi_{-3/2}|0> lands in front: no sign
        let v = apply_mode(Mode::psi(-1).unwrap(), &V::basis(st(&[3], &[])));
        assert_eq!(v, V::basis(st(&[1, 3], &[])));
        // psi_{-3/2} on psi_{-1/2}|0> passes one occupied mode
        let v = apply_mode(Mode::psi(-3).unwrap(), &V::basis(st(&[1], &[])));
        assert_eq!(v, V::basis(st(&[1, 3], &[])).scaled(&-Complex::one()));
        // psibar creation passes the whole psi block
        let v = apply_mode(Mode::psibar(-1).unwrap(), &V::basis(st(&[1, 3], &[])));
        assert_eq!(v, V::basis(st(&[1, 3], &[1])));
        let v = apply_mode(Mode::psibar(-1).unwrap(), &V::basis(st(&[1], &[])));
        assert_eq!(v, V::basis(st(&[1], &[1])).scaled(&-Complex::one()));
    }

    #[test]
    fn current_on_vacuum() {
        let vac = V::vacuum();
        for n in 0..4 {
            assert!(Op::Current(n).apply(&vac).is_zero(), "J_{n} vac");
        }
        let j = Op::Current(-1).apply(&vac);
        assert_eq!(j.len(), 1);
        assert_eq!(j.norm_sqr(), BigRational::one());
        assert!(!num_traits::Zero::is_zero(&j.coeff(&st(&[1], &[1]))));
    }

    #[test]
    fn current_matches_explicit_bilinear_sum() {
        // Oracle: truncated literal sum over r with |r| <= 15/2 of the mode
        // bilinears with the vacuum expectation subtracted.
        let states = [st(&[], &[]), st(&[1, 5], &[3]), st(&[3], &[1, 3]), st(&[1, 3, 5], &[])];
        for n in -3..=3 {
            for s in &states {
                let v = V::basis(s.clone());
                let mut want = V::zero();
                for r2 in (-15..=15).step_by(2) {
                    let bar = Mode::psibar(r2).unwrap();
                    let p = Mode::psi(2 * n - r2).unwrap();
                    let term = apply_mode(bar, &apply_mode(p, &v));
                    let vev = V::vacuum().inner(&apply_mode(bar, &apply_mode(p, &V::vacuum())));
                    want = want + term - v.scaled(&vev);
                }
                assert_eq!(Op::Current(n).apply(&v), want, "n={n} state={s}");
            }
        }
    }

    #[test]
    fn twist_on_states() {
        let i = imag_unit::<BigRational>();
        assert_eq!(Op::Twist.apply(&V::vacuum()), V::vacuum());
        let one = V::basis(st(&[1], &[]));
        assert_eq!(Op::Twist.apply(&one), one.scaled(&i));
    }
}
