use super::{enumerate_basis, Cutoff, FockBasisState, FockOperator, FockVector};
use crate::scalar::Field;
use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;

/// Exact sparse matrix of an operator over `enumerate_basis(cutoff)`.
///
/// Column `j` holds the full image of basis state `j`. A column may reach
/// states above the cutoff ([`BlockMatrix::escapes`]); for products such
/// columns cannot be continued and the product column is `None` (flagged).
#[derive(Debug, Clone)]
pub struct BlockMatrix<F> {
    cutoff: Cutoff,
    basis: Arc<Vec<FockBasisState>>,
    index: Arc<HashMap<FockBasisState, usize>>,
    columns: Vec<Option<FockVector<F>>>,
}

/// Same as [`BlockMatrix::of`].
pub fn matrix_of<F: Field>(op: &FockOperator<F>, cutoff: Cutoff) -> BlockMatrix<F> {
    BlockMatrix::of(op, cutoff)
}

impl<F: Field> BlockMatrix<F> {
    pub fn of(op: &FockOperator<F>, cutoff: Cutoff) -> Self {
        let basis = Arc::new(enumerate_basis(cutoff));
        let index = Arc::new(basis.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect());
        Self::with_basis(op, cutoff, basis, index)
    }

    fn with_basis(
        op: &FockOperator<F>,
        cutoff: Cutoff,
        basis: Arc<Vec<FockBasisState>>,
        index: Arc<HashMap<FockBasisState, usize>>,
    ) -> Self {
        let columns = basis.par_iter().map(|s| Some(op.apply_state(s))).collect();
        Self { cutoff, basis, index, columns }
    }

    /// Matrix of another operator sharing this basis.
    pub fn sibling(&self, op: &FockOperator<F>) -> Self {
        Self::with_basis(op, self.cutoff, self.basis.clone(), self.index.clone())
    }

    pub fn cutoff(&self) -> Cutoff {
        self.cutoff
    }

    pub fn basis(&self) -> &[FockBasisState] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn column(&self, j: usize) -> Option<&FockVector<F>> {
        self.columns[j].as_ref()
    }

    /// Entry `<i|M|j>`; `None` if column `j` is flagged.
    pub fn entry(&self, i: usize, j: usize) -> Option<Complex<F>> {
        self.columns[j].as_ref().map(|c| c.coeff(&self.basis[i]))
    }

    /// True if column `j` is flagged or reaches states above the cutoff.
    pub fn escapes(&self, j: usize) -> bool {
        match &self.columns[j] {
            None => true,
            Some(v) => v.max_energy2() > self.cutoff.e2_max,
        }
    }

    /// Indices of basis states with doubled energy `<= level`.
    pub fn block(&self, level: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.basis[j].energy2() <= level).collect()
    }

    /// `self * rhs`. Column `j` is flagged when `rhs` column `j` leaves the
    /// block or any column of `self` it needs is flagged.
    pub fn mul(&self, rhs: &Self) -> Self {
        let columns = rhs
            .columns
            .par_iter()
            .map(|col| {
                let col = col.as_ref()?;
                let mut out = FockVector::zero();
                for (s, c) in col.terms() {
                    let k = *self.index.get(s)?;
                    out.add_scaled(c, self.columns[k].as_ref()?);
                }
                Some(out)
            })
            .collect();
        self.with_columns(columns)
    }

    fn with_columns(&self, columns: Vec<Option<FockVector<F>>>) -> Self {
        Self { cutoff: self.cutoff, basis: self.basis.clone(), index: self.index.clone(), columns }
    }

    fn zip(&self, rhs: &Self, op: impl Fn(&FockVector<F>, &FockVector<F>) -> FockVector<F>) -> Self {
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| Some(op(a.as_ref()?, b.as_ref()?)))
            .collect();
        self.with_columns(columns)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &Complex<F>) -> Self {
        let columns = self.columns.iter().map(|col| col.as_ref().map(|v| v.scaled(c))).collect();
        self.with_columns(columns)
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn anticommutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).add(&rhs.mul(self))
    }

    /// Conjugate transpose restricted to the block. Column `j` of the result
    /// is exact when every state mapped onto `j` lies within the cutoff, which
    /// holds on the safe block of the operator.
    pub fn adjoint(&self) -> Self {
        let mut columns: Vec<FockVector<F>> = vec![FockVector::zero(); self.dim()];
        let mut flagged = vec![false; self.dim()];
        for (j, col) in self.columns.iter().enumerate() {
            match col {
                Some(v) => {
                    for (s, c) in v.terms() {
                        if let Some(&i) = self.index.get(s) {
                            columns[i].add_term(self.basis[j].clone(), c.conj());
                        }
                    }
                }
                // a flagged column poisons every row it could have touched
                None => flagged.iter_mut().for_each(|f| *f = true),
            }
        }
        let columns = columns
            .into_iter()
            .zip(flagged)
            .map(|(v, f)| (!f).then_some(v))
            .collect();
        self.with_columns(columns)
    }

    /// Compares columns in `block`. Returns a description of the first
    /// difference, or of the first flagged column.
    pub fn mismatch_on(&self, other: &Self, block: &[usize]) -> Option<String> {
        for &j in block {
            match (&self.columns[j], &other.columns[j]) {
                (Some(a), Some(b)) => {
                    if a != b {
                        let diff = a.clone() - b.clone();
                        let (s, c) = diff.terms().next().expect("nonzero difference");
                        return Some(format!(
                            "column {} differs at {}: {:?}",
                            self.basis[j], s, c
                        ));
                    }
                }
                _ => return Some(format!("column {} escapes the cutoff", self.basis[j])),
            }
        }
        None
    }

    /// `c * 1` over the same basis.
    pub fn scalar(&self, c: Complex<F>) -> Self {
        let columns = self
            .basis
            .iter()
            .map(|s| Some(FockVector::term(c.clone(), s.clone())))
            .collect();
        self.with_columns(columns)
    }

    pub fn is_zero_on(&self, block: &[usize]) -> bool {
        self.mismatch_on(&self.scalar(Complex::zero()), block).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    type Op = FockOperator<BigRational>;

    #[test]
    fn diagonal_operators() {
        let c = Cutoff::new(6);
        let l0 = BlockMatrix::of(&Op::Energy, c);
        let q = l0.sibling(&Op::Charge);
        for (j, s) in l0.basis().iter().enumerate() {
            for i in 0..l0.dim() {
                let e = l0.entry(i, j).unwrap();
                let ch = q.entry(i, j).unwrap();
                if i == j {
                    assert_eq!(e.re * BigRational::from_integer(2.into()), BigRational::from_integer(s.energy2().into()));
                    assert_eq!(ch.re, BigRational::from_integer(s.charge().into()));
                } else {
                    assert!(e.is_zero() && ch.is_zero());
                }
            }
        }
    }

    #[test]
    fn creation_escapes_at_top_level() {
        let c = Cutoff::new(4);
        let m = BlockMatrix::of(&Op::psi(-3).unwrap(), c);
        let vac = m.basis().iter().position(|s| *s == FockBasisState::vacuum()).unwrap();
        assert!(!m.escapes(vac));
        let top = m.basis().iter().position(|s| s.energy2() == 4).unwrap();
        assert!(m.escapes(top));
        // product through an escaping column is flagged
        let ann = m.sibling(&Op::psibar(3).unwrap());
        let prod = ann.mul(&m);
        assert!(prod.column(top).is_none());
        assert!(prod.column(vac).is_some());
    }

    #[test]
    fn adjoint_of_modes() {
        let c = Cutoff::new(8);
        for n2 in [-5, -3, -1, 1, 3, 5] {
            let a = BlockMatrix::of(&Op::psi(n2).unwrap(), c);
            let b = a.sibling(&Op::psibar(-n2).unwrap());
            let safe = a.block(c.e2_max - n2.unsigned_abs());
            assert_eq!(a.adjoint().mismatch_on(&b, &safe), None, "n2={n2}");
            assert_eq!(b.adjoint().mismatch_on(&a, &safe), None, "n2={n2}");
        }
    }

    #[test]
    fn identity_scalar() {
        let c = Cutoff::new(4);
        let id = BlockMatrix::of(&Op::Identity, c);
        let all: Vec<usize> = (0..id.dim()).collect();
        assert_eq!(id.mismatch_on(&id.scalar(Complex::one()), &all), None);
        assert!(id.sub(&id).is_zero_on(&all));
    }
}
