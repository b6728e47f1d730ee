//! Exact verification of the mode algebra on safe blocks.

use super::{enumerate_basis, BlockMatrix, Cutoff, FockError, FockOperator, ModeKind};
use crate::report::CheckReport;
use crate::scalar::{imag_unit, Coefficient, Field};
use crate::series::{compare_series, fermionic_character, BivariateSeries, HalfExponent, Order};
use num_complex::Complex;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub const CAR_ANCHOR: &str = "{psi_n, psi_m} = {psibar_n, psibar_m} = 0, {psibar_n, psi_m} = delta_{m+n,0}";
pub const ADJOINT_ANCHOR: &str = "psi_n^* = psibar_{-n}";
pub const CURRENT_ANCHOR: &str = "[J_m, J_n] = m delta_{m+n,0}";
pub const FIELD_CURRENT_ANCHOR: &str = "[J_n, psi_k] = -psi_{n+k}, [J_n, psibar_k] = psibar_{n+k}";
pub const ENERGY_SHIFT_ANCHOR: &str = "[L0, J_n] = -n J_n";
pub const ENERGY_BOUND_ANCHOR: &str = "||J_n xi|| <= (2N + |n| + 2) ||xi|| (linear energy bound)";
pub const TWIST_ANCHOR: &str = "Z = (1 - i Gamma)/(1 - i), Z^2 = Gamma";
pub const GRADING_ANCHOR: &str = "L0, Q and Gamma commute pairwise";
pub const TRACE_ANCHOR: &str = "tr(t^L0 z^Q) over the basis = prod (1+z t^r)(1+z^-1 t^r)";
pub const SMEARED_CAR_ANCHOR: &str = "{psibar(f), psi(g)} = sum_k f_k g_-k (contour integral of f g dz/(2 pi i z))";
pub const SMEARED_FIELD_ANCHOR: &str = "[J(f), psi(g)] = -psi(f g), [J(f), psibar(g)] = psibar(f g)";
pub const SMEARED_CURRENT_ANCHOR: &str = "[J(f), J(g)] = 2i omega(f, g)";

/// Fourier coefficients of a trigonometric polynomial. Keys are mode
/// indices: doubled half-integers for fields, plain integers for currents.
pub type Smearing<F> = BTreeMap<i32, Complex<F>>;

fn real<F: Field>(v: i64) -> Complex<F> {
    Complex::new(F::from_i64(v).expect("small integer"), F::zero())
}

fn identity_on<F: Field>(c: Cutoff) -> BlockMatrix<F> {
    BlockMatrix::of(&FockOperator::Identity, c)
}

/// Collects the first failure of several sub-identities into one report.
fn combine(name: String, parts: Vec<(&str, Option<String>)>, anchor: &str) -> CheckReport {
    let mismatch = parts
        .into_iter()
        .find_map(|(label, m)| m.map(|m| format!("{label}: {m}")));
    CheckReport::exact(name, mismatch, anchor)
}

fn half(n2: i32) -> String {
    format!("{n2}/2")
}

/// Canonical anticommutation relations for `psi_n`, `psi_m` (doubled
/// indices) on the safe block.
pub fn car_check<F: Field>(n2: i32, m2: i32, c: Cutoff) -> Result<CheckReport, FockError> {
    let level = c.safe_level(n2.unsigned_abs() + m2.unsigned_abs())?;
    let id = identity_on::<F>(c);
    let safe = id.block(level);
    let psi_n = id.sibling(&FockOperator::psi(n2)?);
    let psi_m = id.sibling(&FockOperator::psi(m2)?);
    let bar_n = id.sibling(&FockOperator::psibar(n2)?);
    let bar_m = id.sibling(&FockOperator::psibar(m2)?);
    let delta = if n2 + m2 == 0 { 1 } else { 0 };
    let zero = id.scalar(Complex::zero());
    Ok(combine(
        format!("car[n={},m={}]", half(n2), half(m2)),
        vec![
            ("{psi_n,psi_m}", psi_n.anticommutator(&psi_m).mismatch_on(&zero, &safe)),
            ("{psibar_n,psibar_m}", bar_n.anticommutator(&bar_m).mismatch_on(&zero, &safe)),
            ("{psibar_n,psi_m}", bar_n.anticommutator(&psi_m).mismatch_on(&id.scalar(real(delta)), &safe)),
        ],
        CAR_ANCHOR,
    ))
}

/// `adjoint(psi_n) = psibar_{-n}` and `adjoint(psibar_n) = psi_{-n}`.
pub fn adjoint_check<F: Field>(n2: i32, c: Cutoff) -> Result<CheckReport, FockError> {
    let level = c.safe_level(n2.unsigned_abs())?;
    let id = identity_on::<F>(c);
    let safe = id.block(level);
    let psi = id.sibling(&FockOperator::psi(n2)?);
    let bar = id.sibling(&FockOperator::psibar(-n2)?);
    Ok(combine(
        format!("adjoint[n={}]", half(n2)),
        vec![
            ("psi_n^*", psi.adjoint().mismatch_on(&bar, &safe)),
            ("psibar_-n^*", bar.adjoint().mismatch_on(&psi, &safe)),
        ],
        ADJOINT_ANCHOR,
    ))
}

/// `J_n` as an operator. The bilinear sum is finite on every basis state,
/// so the cutoff only bounds where its matrix is later compared.
pub fn current_mode<F: Field>(n: i32) -> FockOperator<F> {
    FockOperator::Current(n)
}

pub fn current_algebra_check<F: Field>(m: i32, n: i32, c: Cutoff) -> Result<CheckReport, FockError> {
    let level = c.safe_level(2 * (m.unsigned_abs() + n.unsigned_abs()))?;
    let id = identity_on::<F>(c);
    let safe = id.block(level);
    let jm = id.sibling(&current_mode(m));
    let jn = id.sibling(&current_mode(n));
    let want = id.scalar(real(if m + n == 0 { m as i64 } else { 0 }));
    Ok(combine(
        format!("current_algebra[m={m},n={n}]"),
        vec![("[J_m,J_n]", jm.commutator(&jn).mismatch_on(&want, &safe))],
        CURRENT_ANCHOR,
    ))
}

pub fn field_current_commutator_check<F: Field>(
    n: i32,
    k2: i32,
    c: Cutoff,
) -> Result<CheckReport, FockError> {
    let level = c.safe_level(2 * n.unsigned_abs() + k2.unsigned_abs())?;
    let id = identity_on::<F>(c);
    let safe = id.block(level);
    let j = id.sibling(&current_mode(n));
    let psi = id.sibling(&FockOperator::psi(k2)?);
    let bar = id.sibling(&FockOperator::psibar(k2)?);
    let psi_shift = id.sibling(&FockOperator::psi(2 * n + k2)?).scale(&real(-1));
    let bar_shift = id.sibling(&FockOperator::psibar(2 * n + k2)?);
    Ok(combine(
        format!("field_current[n={n},k={}]", half(k2)),
        vec![
            ("[J_n,psi_k]", j.commutator(&psi).mismatch_on(&psi_shift, &safe)),
            ("[J_n,psibar_k]", j.commutator(&bar).mismatch_on(&bar_shift, &safe)),
        ],
        FIELD_CURRENT_ANCHOR,
    ))
}

/// `[L0, J_n] = -n J_n`.
pub fn energy_shift_check<F: Field>(n: i32, c: Cutoff) -> Result<CheckReport, FockError> {
    let level = c.safe_level(2 * n.unsigned_abs())?;
    let id = identity_on::<F>(c);
    let safe = id.block(level);
    let l0 = id.sibling(&FockOperator::Energy);
    let j = id.sibling(&current_mode(n));
    Ok(combine(
        format!("energy_shift[n={n}]"),
        vec![("[L0,J_n]", l0.commutator(&j).mismatch_on(&j.scale(&real(-(n as i64))), &safe))],
        ENERGY_SHIFT_ANCHOR,
    ))
}

/// `||J_n xi||^2 <= ||(2(L0+1)+|n|) xi||^2` for every safe basis vector,
/// compared exactly. `measured` is the largest ratio of the two sides.
pub fn energy_bound_check<F: Field>(n: i32, c: Cutoff) -> Result<CheckReport, FockError> {
    let level = c.safe_level(2 * n.unsigned_abs())?;
    let j = current_mode::<F>(n);
    let mut worst = 0.0f64;
    let mut violation = None;
    for s in enumerate_basis(c).into_iter().filter(|s| s.energy2() <= level) {
        let lhs = j.apply_state(&s).norm_sqr();
        // 2(E+1)+|n| with E = energy2/2
        let bound = F::from_u32(s.energy2() + 2 + n.unsigned_abs()).expect("small integer");
        let rhs = bound.clone() * bound;
        if let Some(r) = (lhs.clone() / rhs.clone()).to_f64() {
            worst = worst.max(r);
        }
        if lhs > rhs && violation.is_none() {
            violation = Some(format!("violated at {s}"));
        }
    }
    let name = format!("energy_bound[n={n}]");
    Ok(match violation {
        Some(v) => CheckReport::new(name, false, v, 1.0, ENERGY_BOUND_ANCHOR),
        None => CheckReport::new(name, true, worst, 1.0, ENERGY_BOUND_ANCHOR),
    })
}

/// `(Gamma, Z)` as matrices.
pub fn grading_ops<F: Field>(c: Cutoff) -> (BlockMatrix<F>, BlockMatrix<F>) {
    let gamma = BlockMatrix::of(&FockOperator::Parity, c);
    let z = gamma.sibling(&FockOperator::Twist);
    (gamma, z)
}

/// `Z^2 = Gamma`, `Z Omega = Omega`, and `Z = i` on odd states.
pub fn twist_check<F: Field>(c: Cutoff) -> CheckReport {
    let (gamma, z) = grading_ops::<F>(c);
    let all: Vec<usize> = (0..gamma.dim()).collect();
    let i = imag_unit::<F>();
    let mut diag = None;
    for (j, s) in z.basis().iter().enumerate() {
        let want = if s.fermion_number() % 2 == 0 { Complex::one() } else { i.clone() };
        if z.entry(j, j) != Some(want) {
            diag = Some(format!("Z entry at {s}"));
            break;
        }
    }
    combine(
        format!("twist[e2_max={}]", c.e2_max),
        vec![("Z^2 = Gamma", z.mul(&z).mismatch_on(&gamma, &all)), ("Z diagonal", diag)],
        TWIST_ANCHOR,
    )
}

/// `L0`, `Q`, `Gamma` commute pairwise.
pub fn grading_commute_check<F: Field>(c: Cutoff) -> CheckReport {
    let l0 = BlockMatrix::of(&FockOperator::<F>::Energy, c);
    let q = l0.sibling(&FockOperator::Charge);
    let g = l0.sibling(&FockOperator::Parity);
    let all: Vec<usize> = (0..l0.dim()).collect();
    let zero = l0.scalar(Complex::zero());
    combine(
        format!("grading_commute[e2_max={}]", c.e2_max),
        vec![
            ("[L0,Q]", l0.commutator(&q).mismatch_on(&zero, &all)),
            ("[L0,Gamma]", l0.commutator(&g).mismatch_on(&zero, &all)),
            ("[Q,Gamma]", q.commutator(&g).mismatch_on(&zero, &all)),
        ],
        GRADING_ANCHOR,
    )
}

/// `sum_{basis} t^energy z^charge` over the truncated basis.
pub fn character_trace<C: Coefficient>(c: Cutoff) -> BivariateSeries<C> {
    let mut out = BivariateSeries::zero(Order(c.e2_max));
    for s in enumerate_basis(c) {
        out.add_term(HalfExponent(s.energy2()), s.charge(), C::one());
    }
    out
}

pub fn character_trace_check<C: Coefficient + fmt::Display>(c: Cutoff) -> CheckReport {
    compare_series(
        &format!("character_trace[e2_max={}]", c.e2_max),
        &character_trace::<C>(c),
        &fermionic_character::<C>(Order(c.e2_max)),
        TRACE_ANCHOR,
    )
}

fn max_abs_index<F>(f: &Smearing<F>) -> u32 {
    f.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0)
}

/// `Psi(f) = sum_r f_r Psi_r` with doubled half-integer keys.
pub fn smeared_field<F: Field>(
    coeffs: &Smearing<F>,
    kind: ModeKind,
    c: Cutoff,
) -> Result<FockOperator<F>, FockError> {
    let mut terms = Vec::with_capacity(coeffs.len());
    for (&k2, v) in coeffs {
        if k2.unsigned_abs() > c.e2_max {
            return Err(FockError::SupportExceedsCutoff { index: k2, e2_max: c.e2_max });
        }
        let mode = match kind {
            ModeKind::Psi => FockOperator::psi(k2)?,
            ModeKind::PsiBar => FockOperator::psibar(k2)?,
        };
        terms.push(mode.scaled(v.clone()));
    }
    Ok(FockOperator::Sum(terms))
}

/// `J(f) = sum_n f_n J_n` with integer keys.
pub fn smeared_current<F: Field>(coeffs: &Smearing<F>, c: Cutoff) -> Result<FockOperator<F>, FockError> {
    let mut terms = Vec::with_capacity(coeffs.len());
    for (&n, v) in coeffs {
        if 2 * n.unsigned_abs() > c.e2_max {
            return Err(FockError::SupportExceedsCutoff { index: 2 * n, e2_max: c.e2_max });
        }
        terms.push(current_mode(n).scaled(v.clone()));
    }
    Ok(FockOperator::Sum(terms))
}

/// Coefficients of the pointwise product `f g` of an integer-mode `f` and a
/// half-integer-mode `g` (doubled keys in and out).
pub fn convolve<F: Field>(f: &Smearing<F>, g2: &Smearing<F>) -> Smearing<F> {
    let mut out: Smearing<F> = BTreeMap::new();
    for (&n, a) in f {
        for (&k2, b) in g2 {
            let e = out.entry(2 * n + k2).or_insert_with(Complex::zero);
            *e = e.clone() + a.clone() * b.clone();
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `omega(f, g) = -i/2 sum_k k f_k g_{-k}` on integer-mode coefficients.
pub fn omega_form<F: Field>(f: &Smearing<F>, g: &Smearing<F>) -> Complex<F> {
    let sum = f.iter().fold(Complex::<F>::zero(), |acc, (&k, a)| match g.get(&-k) {
        Some(b) => acc + a.clone() * b.clone() * real::<F>(k as i64),
        None => acc,
    });
    let half = Complex::new(F::zero(), -F::one() / (F::one() + F::one()));
    half * sum
}

/// `{psibar(f), psi(g)} = (sum_k f_k g_{-k}) 1`, doubled keys.
pub fn smeared_car_check<F: Field>(
    f2: &Smearing<F>,
    g2: &Smearing<F>,
    c: Cutoff,
) -> Result<CheckReport, FockError> {
    let level = c.safe_level(max_abs_index(f2) + max_abs_index(g2))?;
    let id = identity_on::<F>(c);
    let safe = id.block(level);
    let bar_f = id.sibling(&smeared_field(f2, ModeKind::PsiBar, c)?);
    let psi_g = id.sibling(&smeared_field(g2, ModeKind::Psi, c)?);
    let pairing = f2.iter().fold(Complex::<F>::zero(), |acc, (&k, a)| match g2.get(&-k) {
        Some(b) => acc + a.clone() * b.clone(),
        None => acc,
    });
    Ok(combine(
        "smeared_car".into(),
        vec![("{psibar(f),psi(g)}", bar_f.anticommutator(&psi_g).mismatch_on(&id.scalar(pairing), &safe))],
        SMEARED_CAR_ANCHOR,
    ))
}

/// `[J(f), psi(g)] = -psi(f g)` and `[J(f), psibar(g)] = psibar(f g)`.
pub fn smeared_field_current_check<F: Field>(
    f: &Smearing<F>,
    g2: &Smearing<F>,
    c: Cutoff,
) -> Result<CheckReport, FockError> {
    let level = c.safe_level(2 * max_abs_index(f) + max_abs_index(g2))?;
    let fg = convolve(f, g2);
    let id = identity_on::<F>(c);
    let safe = id.block(level);
    let j = id.sibling(&smeared_current(f, c)?);
    let psi = id.sibling(&smeared_field(g2, ModeKind::Psi, c)?);
    let bar = id.sibling(&smeared_field(g2, ModeKind::PsiBar, c)?);
    let big = Cutoff::new(u32::MAX);
    let psi_fg = id.sibling(&smeared_field(&fg, ModeKind::Psi, big)?).scale(&real(-1));
    let bar_fg = id.sibling(&smeared_field(&fg, ModeKind::PsiBar, big)?);
    Ok(combine(
        "smeared_field_current".into(),
        vec![
            ("[J(f),psi(g)]", j.commutator(&psi).mismatch_on(&psi_fg, &safe)),
            ("[J(f),psibar(g)]", j.commutator(&bar).mismatch_on(&bar_fg, &safe)),
        ],
        SMEARED_FIELD_ANCHOR,
    ))
}

/// `[J(f), J(g)] = 2i omega(f, g) 1`.
pub fn smeared_current_check<F: Field>(
    f: &Smearing<F>,
    g: &Smearing<F>,
    c: Cutoff,
) -> Result<CheckReport, FockError> {
    let level = c.safe_level(2 * (max_abs_index(f) + max_abs_index(g)))?;
    let id = identity_on::<F>(c);
    let safe = id.block(level);
    let jf = id.sibling(&smeared_current(f, c)?);
    let jg = id.sibling(&smeared_current(g, c)?);
    let two_i = imag_unit::<F>() * real::<F>(2);
    let want = id.scalar(two_i * omega_form(f, g));
    Ok(combine(
        "smeared_current".into(),
        vec![("[J(f),J(g)]", jf.commutator(&jg).mismatch_on(&want, &safe))],
        SMEARED_CURRENT_ANCHOR,
    ))
}

/// Index ranges swept by [`fock_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteRanges {
    /// Largest doubled `|n|` for field modes.
    pub field2: u32,
    /// Largest `|n|` for current modes in `[J_m, J_n]`.
    pub current: u32,
    /// Largest `|n|` in the energy bound.
    pub bound: u32,
}

impl Default for SuiteRanges {
    fn default() -> Self {
        SuiteRanges { field2: 5, current: 3, bound: 4 }
    }
}

fn odd_range(max2: u32) -> impl Iterator<Item = i32> + Clone {
    let m = max2 as i32;
    (-m..=m).filter(|k| k.rem_euclid(2) == 1)
}

/// Every exact check over all index combinations whose safe block is
/// nonempty at cutoff `c`.
pub fn fock_suite<F: Field>(c: Cutoff, ranges: SuiteRanges) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut push = |r: Result<CheckReport, FockError>| {
        if let Ok(r) = r {
            out.push(r);
        }
    };
    for n2 in odd_range(ranges.field2) {
        push(adjoint_check::<F>(n2, c));
        for m2 in odd_range(ranges.field2) {
            push(car_check::<F>(n2, m2, c));
        }
    }
    let cur = ranges.current as i32;
    for m in -cur..=cur {
        for n in -cur..=cur {
            push(current_algebra_check::<F>(m, n, c));
        }
    }
    // integer n with |n| <= field2/2
    let fmax = (ranges.field2 / 2) as i32;
    for n in -fmax..=fmax {
        for k2 in odd_range(ranges.field2) {
            push(field_current_commutator_check::<F>(n, k2, c));
        }
    }
    let b = ranges.bound as i32;
    for n in -b..=b {
        push(energy_bound_check::<F>(n, c));
        push(energy_shift_check::<F>(n, c));
    }
    out.push(twist_check::<F>(c));
    out.push(grading_commute_check::<F>(c));
    out.push(character_trace_check::<num_bigint::BigInt>(c));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type Q = BigRational;
    const C12: Cutoff = Cutoff { e2_max: 12 };

    fn cq(re: i64, im: i64) -> Complex<Q> {
        Complex::new(Q::from_integer(re.into()), Q::from_integer(im.into()))
    }

    fn smear(pairs: &[(i32, Complex<Q>)]) -> Smearing<Q> {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn car_examples() {
        for (n2, m2) in [(1, -1), (1, 1), (3, -1), (-3, 3), (5, -5)] {
            let r = car_check::<Q>(n2, m2, C12).unwrap();
            assert!(r.pass, "{r}");
        }
        assert!(matches!(car_check::<Q>(7, 7, C12), Err(FockError::EmptySafeBlock { .. })));
    }

    #[test]
    fn car_entry_values() {
        // Oracle: explicit matrix products for {psibar_{3/2}, psi_{-1/2}} = 0
        // and {psibar_{1/2}, psi_{-1/2}} = 1 on the vacuum column.
        let c = Cutoff::new(6);
        let id = identity_on::<Q>(c);
        let vac = 0;
        let a = id.sibling(&FockOperator::psibar(3).unwrap());
        let b = id.sibling(&FockOperator::psi(-1).unwrap());
        assert!(a.anticommutator(&b).column(vac).unwrap().is_zero());
        let a = id.sibling(&FockOperator::psibar(1).unwrap());
        assert_eq!(a.anticommutator(&b).entry(vac, vac), Some(cq(1, 0)));
    }

    #[test]
    fn current_algebra_examples() {
        for (m, n) in [(1, -1), (1, 1), (2, -2), (-3, 3), (0, 0)] {
            assert!(current_algebra_check::<Q>(m, n, C12).unwrap().pass, "m={m} n={n}");
        }
        // commutator is m * 1: value 2 for (2, -2)
        let id = identity_on::<Q>(C12);
        let c = id.sibling(&current_mode(2)).commutator(&id.sibling(&current_mode(-2)));
        assert_eq!(c.entry(0, 0), Some(cq(2, 0)));
    }

    #[test]
    fn field_current_examples() {
        assert!(field_current_commutator_check::<Q>(0, 1, C12).unwrap().pass);
        assert!(field_current_commutator_check::<Q>(-1, 1, C12).unwrap().pass);
        // explicit: [J_{-1}, psibar_{1/2}] = psibar_{-1/2}, check on psi_{-1/2}|0>
        let c = Cutoff::new(6);
        let id = identity_on::<Q>(c);
        let comm = id
            .sibling(&current_mode(-1))
            .commutator(&id.sibling(&FockOperator::psibar(1).unwrap()));
        let want = id.sibling(&FockOperator::psibar(-1).unwrap());
        let safe = id.block(3);
        assert_eq!(comm.mismatch_on(&want, &safe), None);
        // vacuum expectation of [J_n, psi_k] vanishes
        for n in -2..=2 {
            for k2 in [-3, -1, 1, 3] {
                let comm = id
                    .sibling(&current_mode(n))
                    .commutator(&id.sibling(&FockOperator::psi(k2).unwrap()));
                assert!(comm.entry(0, 0).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn energy_bounds() {
        let r = energy_bound_check::<Q>(-1, C12).unwrap();
        assert!(r.pass);
        // ||J_{-1} Omega|| = 1 against bound 3
        let j = current_mode::<Q>(-1).apply_state(&super::super::FockBasisState::vacuum());
        assert_eq!(j.norm_sqr(), Q::one());
        for n in -4..=4 {
            assert!(energy_bound_check::<Q>(n, C12).unwrap().pass, "n={n}");
        }
    }

    #[test]
    fn energy_shift() {
        for n in -3..=3 {
            assert!(energy_shift_check::<Q>(n, C12).unwrap().pass, "n={n}");
        }
    }

    #[test]
    fn twist_and_grading() {
        assert!(twist_check::<Q>(C12).pass);
        assert!(twist_check::<Q>(Cutoff::new(0)).pass);
        assert!(grading_commute_check::<Q>(Cutoff::new(8)).pass);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(character_trace::<BigInt>(Cutoff::new(0)), BivariateSeries::one(Order(0)));
        let t = character_trace::<BigInt>(Cutoff::new(2));
        assert_eq!(t.coeff(HalfExponent(1), 1), BigInt::from(1));
        assert_eq!(t.coeff(HalfExponent(1), -1), BigInt::from(1));
        assert_eq!(t.coeff(HalfExponent(2), 0), BigInt::from(1));
        for e2 in 0..=12 {
            assert!(character_trace_check::<BigInt>(Cutoff::new(e2)).pass);
        }
    }

    #[test]
    fn omega_examples() {
        let f = smear(&[(1, cq(1, 0)), (-1, cq(1, 0))]);
        assert_eq!(omega_form(&f, &f), Complex::zero());
        let e1 = smear(&[(1, cq(1, 0))]);
        let em1 = smear(&[(-1, cq(1, 0))]);
        let half = Q::new(1.into(), 2.into());
        assert_eq!(omega_form(&e1, &em1), Complex::new(Q::zero(), -half));
        assert!(smeared_current_check(&e1, &em1, C12).unwrap().pass);
    }

    #[test]
    fn smeared_examples() {
        let f = smear(&[(1, cq(3, -2))]);
        let op = smeared_field(&f, ModeKind::Psi, C12).unwrap();
        assert_eq!(op, FockOperator::Sum(vec![FockOperator::psi(1).unwrap().scaled(cq(3, -2))]));
        let e_half = smear(&[(1, cq(1, 0))]);
        let e_mhalf = smear(&[(-1, cq(1, 0))]);
        assert!(smeared_car_check(&e_half, &e_mhalf, C12).unwrap().pass);

        let f = smear(&[(-1, cq(1, 1)), (0, cq(2, 0)), (2, cq(0, -1))]);
        let g = smear(&[(-3, cq(1, 0)), (1, cq(-1, 2)), (3, cq(0, 1))]);
        assert!(smeared_field_current_check(&f, &g, Cutoff::new(14)).unwrap().pass);
        assert!(smeared_car_check(&g, &g, C12).unwrap().pass);
        let f2 = smear(&[(1, cq(1, 2)), (-2, cq(0, 1))]);
        assert!(smeared_current_check(&f, &f2, C12).unwrap().pass);
    }

    #[test]
    fn smearing_support_errors() {
        let f = smear(&[(15, cq(1, 0))]);
        assert_eq!(
            smeared_field(&f, ModeKind::Psi, C12),
            Err(FockError::SupportExceedsCutoff { index: 15, e2_max: 12 })
        );
        let j = smear(&[(7, cq(1, 0))]);
        assert!(smeared_current(&j, C12).is_err());
    }

    #[test]
    fn suite_small_cutoffs() {
        let reports = fock_suite::<Q>(Cutoff::new(0), SuiteRanges::default());
        assert!(!reports.is_empty());
        assert!(reports.iter().all(|r| r.pass));
        let reports = fock_suite::<Q>(Cutoff::new(6), SuiteRanges::default());
        assert!(reports.iter().all(|r| r.pass), "{:?}", reports.iter().find(|r| !r.pass));
    }
}
