//! Energy-truncated fermionic Fock space of the complex free fermion.
//!
//! Basis vectors are `psi_{-r_1} ... psi_{-r_k} psibar_{-s_1} ... psibar_{-s_l} Omega`
//! with `r_1 < ... < r_k` and `s_1 < ... < s_l` positive half-integers. All
//! mode indices are stored doubled (odd integers). Scalars are `Complex<F>`
//! for an exact field `F` (normally `BigRational`), so operator identities
//! are checked by exact equality on a *safe block*: the states whose energy
//! leaves room for every mode shift involved, so that no intermediate vector
//! is cut off.

mod checks;
mod matrix;
mod operator;

pub use checks::*;
pub use matrix::{matrix_of, BlockMatrix};
pub use operator::{apply_mode, FockOperator, Mode, ModeKind};

use crate::scalar::Field;
use num_complex::Complex;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("mode index {0}/2 is not a half-integer")]
    NotHalfInteger(i32),
    #[error("safe block is empty: budget {budget}/2 exceeds cutoff {e2_max}/2")]
    EmptySafeBlock { budget: u32, e2_max: u32 },
    #[error("smearing support at {index}/2 exceeds cutoff {e2_max}/2")]
    SupportExceedsCutoff { index: i32, e2_max: u32 },
}

/// Positive half-integer mode label `r`, stored as the odd integer `2r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfMode(u32);

impl HalfMode {
    pub fn from_doubled(doubled: u32) -> Option<Self> {
        (doubled % 2 == 1).then_some(HalfMode(doubled))
    }

    pub fn doubled(self) -> u32 {
        self.0
    }
}

/// Energy truncation: keep states with `2 * energy <= e2_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cutoff {
    pub e2_max: u32,
}

impl Cutoff {
    pub const DEFAULT: Cutoff = Cutoff { e2_max: 12 };

    pub fn new(e2_max: u32) -> Self {
        Cutoff { e2_max }
    }

    pub fn contains(&self, s: &FockBasisState) -> bool {
        s.energy2() <= self.e2_max
    }

    /// Largest doubled energy whose states survive a total mode shift of
    /// `budget` (doubled). Errors if even the vacuum does not.
    pub fn safe_level(&self, budget: u32) -> Result<u32, FockError> {
        self.e2_max
            .checked_sub(budget)
            .ok_or(FockError::EmptySafeBlock { budget, e2_max: self.e2_max })
    }
}

impl Default for Cutoff {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Occupation pattern of a basis vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FockBasisState {
    psi: Vec<HalfMode>,
    psibar: Vec<HalfMode>,
}

impl FockBasisState {
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Builds a state from doubled mode labels. Returns `None` unless both
    /// lists are strictly ascending positive odd integers.
    pub fn new(psi: &[u32], psibar: &[u32]) -> Option<Self> {
        fn modes(list: &[u32]) -> Option<Vec<HalfMode>> {
            let v: Option<Vec<_>> = list.iter().map(|d| HalfMode::from_doubled(*d)).collect();
            let v = v?;
            v.windows(2).all(|w| w[0] < w[1]).then_some(v)
        }
        Some(Self { psi: modes(psi)?, psibar: modes(psibar)? })
    }

    pub fn psi(&self) -> &[HalfMode] {
        &self.psi
    }

    pub fn psibar(&self) -> &[HalfMode] {
        &self.psibar
    }

    pub(crate) fn psi_mut(&mut self) -> &mut Vec<HalfMode> {
        &mut self.psi
    }

    pub(crate) fn psibar_mut(&mut self) -> &mut Vec<HalfMode> {
        &mut self.psibar
    }

    /// Twice the `L0` eigenvalue.
    pub fn energy2(&self) -> u32 {
        self.psi.iter().chain(&self.psibar).map(|m| m.0).sum()
    }

    /// `Q` eigenvalue `k - l`.
    pub fn charge(&self) -> i32 {
        self.psi.len() as i32 - self.psibar.len() as i32
    }

    /// Number of fermion operators `k + l`.
    pub fn fermion_number(&self) -> usize {
        self.psi.len() + self.psibar.len()
    }

    fn sort_key(&self) -> (u32, i32, &[HalfMode], &[HalfMode]) {
        (self.energy2(), self.charge(), &self.psi, &self.psibar)
    }
}

impl fmt::Display for FockBasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.psi {
            write!(f, "psi(-{}/2)", m.0)?;
        }
        for m in &self.psibar {
            write!(f, "psibar(-{}/2)", m.0)?;
        }
        f.write_str("|0>")
    }
}

/// Strictly ascending lists of positive odd integers with sum `<= budget`.
fn ascending_mode_sets(budget: u32) -> Vec<Vec<HalfMode>> {
    fn go(start: u32, budget: u32, cur: &mut Vec<HalfMode>, out: &mut Vec<Vec<HalfMode>>) {
        out.push(cur.clone());
        let mut m = start;
        while m <= budget {
            cur.push(HalfMode(m));
            go(m + 2, budget - m, cur, out);
            cur.pop();
            m += 2;
        }
    }
    let mut out = Vec::new();
    go(1, budget, &mut Vec::new(), &mut out);
    out
}

/// All basis states within the cutoff, ordered by energy, then charge, then
/// lexicographically by occupied modes.
pub fn enumerate_basis(c: Cutoff) -> Vec<FockBasisState> {
    let sets = ascending_mode_sets(c.e2_max);
    let mut out = Vec::new();
    for psi in &sets {
        let e: u32 = psi.iter().map(|m| m.0).sum();
        for psibar in &sets {
            let eb: u32 = psibar.iter().map(|m| m.0).sum();
            if e + eb <= c.e2_max {
                out.push(FockBasisState { psi: psi.clone(), psibar: psibar.clone() });
            }
        }
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// Finite linear combination of basis states with exact complex scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockVector<F> {
    terms: BTreeMap<FockBasisState, Complex<F>>,
}

impl<F: Field> Default for FockVector<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> FockVector<F> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn basis(state: FockBasisState) -> Self {
        Self::term(Complex::new(F::one(), F::zero()), state)
    }

    pub fn vacuum() -> Self {
        Self::basis(FockBasisState::vacuum())
    }

    pub fn term(c: Complex<F>, state: FockBasisState) -> Self {
        let mut v = Self::zero();
        v.add_term(state, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &FockBasisState) -> Complex<F> {
        self.terms.get(s).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockBasisState, &Complex<F>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: FockBasisState, c: Complex<F>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Complex<F>, other: &Self) {
        for (s, v) in &other.terms {
            self.add_term(s.clone(), c.clone() * v.clone());
        }
    }

    pub fn scaled(&self, c: &Complex<F>) -> Self {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    /// `||v||^2`, exact.
    pub fn norm_sqr(&self) -> F {
        self.terms.values().fold(F::zero(), |acc, c| acc + c.norm_sqr())
    }

    /// `<self, other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex<F> {
        self.terms.iter().fold(Complex::zero(), |acc, (s, c)| {
            acc + c.conj() * other.coeff(s)
        })
    }

    /// Largest doubled energy in the support (`0` for the zero vector).
    pub fn max_energy2(&self) -> u32 {
        self.terms.keys().map(|s| s.energy2()).max().unwrap_or(0)
    }
}

impl<F: Field> std::ops::Add for FockVector<F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (s, c) in rhs.terms {
            self.add_term(s, c);
        }
        self
    }
}

impl<F: Field> std::ops::Sub for FockVector<F> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (s, c) in rhs.terms {
            self.add_term(s, -c);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{fermionic_character, HalfExponent, Order};
    use num_bigint::BigInt;

    #[test]
    fn basis_small_cutoffs() {
        assert_eq!(enumerate_basis(Cutoff::new(0)), vec![FockBasisState::vacuum()]);
        let b1 = enumerate_basis(Cutoff::new(1));
        assert_eq!(b1.len(), 3);
        assert_eq!(b1[0], FockBasisState::vacuum());
        // charge -1 sorts before charge +1 at equal energy
        assert_eq!(b1[1], FockBasisState::new(&[], &[1]).unwrap());
        assert_eq!(b1[2], FockBasisState::new(&[1], &[]).unwrap());
    }

    #[test]
    fn basis_counts_match_character() {
        let c = Cutoff::new(12);
        let basis = enumerate_basis(c);
        let ch = fermionic_character::<BigInt>(Order(12));
        for e2 in 0..=12u32 {
            for q in -6..=6 {
                let n = basis.iter().filter(|s| s.energy2() == e2 && s.charge() == q).count();
                assert_eq!(ch.coeff(HalfExponent(e2), q), BigInt::from(n), "e2={e2} q={q}");
            }
        }
    }

    #[test]
    fn state_validation() {
        assert!(FockBasisState::new(&[1, 3], &[1]).is_some());
        assert!(FockBasisState::new(&[3, 1], &[]).is_none());
        assert!(FockBasisState::new(&[1, 1], &[]).is_none());
        assert!(FockBasisState::new(&[2], &[]).is_none());
        let s = FockBasisState::new(&[1, 3], &[5]).unwrap();
        assert_eq!(s.energy2(), 9);
        assert_eq!(s.charge(), 1);
    }

    #[test]
    fn safe_level_errors_when_budget_exceeds_cutoff() {
        assert_eq!(Cutoff::new(4).safe_level(3), Ok(1));
        assert_eq!(
            Cutoff::new(2).safe_level(3),
            Err(FockError::EmptySafeBlock { budget: 3, e2_max: 2 })
        );
    }
}
