//! Truncated formal power series in `t^(1/2)` (and `z`, `z^-1`) with exact
//! coefficients.
//!
//! Exponents of `t` are stored doubled ([`HalfExponent`]) so that integer and
//! half-integer gradings share one exact representation. Truncation is
//! inclusive: a series of order `N` keeps every term with doubled exponent
//! `<= N`. Products silently drop terms above the order.

use crate::report::CheckReport;
use crate::scalar::Coefficient;
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1} (doubled)")]
    OrderMismatch(u32, u32),
    #[error("series is not a unit: constant term must be 1")]
    NotUnit,
}

/// Exponent `r` of `t^r`, stored as `2r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfExponent(pub u32);

impl HalfExponent {
    pub const ZERO: Self = HalfExponent(0);

    pub fn from_doubled(doubled: u32) -> Self {
        HalfExponent(doubled)
    }

    /// `t^n` for integer `n`.
    pub fn integer(n: u32) -> Self {
        HalfExponent(2 * n)
    }

    pub fn doubled(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

impl fmt::Display for HalfExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Truncation order in doubled units: order `N` keeps `t^r` with `2r <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order(pub u32);

impl Order {
    pub fn doubled(n: u32) -> Self {
        Order(n)
    }

    /// Keep terms up to `t^n` (integer power).
    pub fn power(n: u32) -> Self {
        Order(2 * n)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    fn keeps(self, e: HalfExponent) -> bool {
        e.0 <= self.0
    }
}

fn check_orders(a: Order, b: Order) -> Result<(), SeriesError> {
    if a == b {
        Ok(())
    } else {
        Err(SeriesError::OrderMismatch(a.0, b.0))
    }
}

/// Series in `t^(1/2)` only.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariateSeries<C> {
    coeffs: BTreeMap<HalfExponent, C>,
    order: Order,
}

impl<C: Coefficient> UnivariateSeries<C> {
    pub fn zero(order: Order) -> Self {
        Self { coeffs: BTreeMap::new(), order }
    }

    pub fn one(order: Order) -> Self {
        Self::from_terms(order, [(HalfExponent::ZERO, C::one())])
    }

    /// Builds a series, summing repeated exponents and dropping terms above
    /// `order` and zero coefficients.
    pub fn from_terms(order: Order, terms: impl IntoIterator<Item = (HalfExponent, C)>) -> Self {
        let mut s = Self::zero(order);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn coeff(&self, e: HalfExponent) -> C {
        self.coeffs.get(&e).cloned().unwrap_or_else(C::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (HalfExponent, &C)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, e: HalfExponent, c: C) {
        if !self.order.keeps(e) || c.is_zero() {
            return;
        }
        let sum = self.coeff(e) + c;
        if sum.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, sum);
        }
    }

    /// Overwrites one coefficient (used to build negative controls).
    pub fn set_coeff(&mut self, e: HalfExponent, c: C) {
        self.coeffs.remove(&e);
        self.add_term(e, c);
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        check_orders(self.order, other.order)?;
        let mut out = Self::zero(self.order);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = HalfExponent(ea.0 + eb.0);
                if !self.order.keeps(e) {
                    // keys are ascending
                    break;
                }
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        if !self.coeff(HalfExponent::ZERO).is_one() {
            return Err(SeriesError::NotUnit);
        }
        let n = self.order.0 as usize;
        // b_0 = 1, b_k = -sum_{j=1..k} a_j b_{k-j}
        let mut inv: Vec<C> = vec![C::zero(); n + 1];
        inv[0] = C::one();
        for k in 1..=n {
            let mut acc = C::zero();
            for (e, a) in self.coeffs.range(HalfExponent(1)..=HalfExponent(k as u32)) {
                let j = e.0 as usize;
                if !inv[k - j].is_zero() {
                    acc = acc + a.clone() * inv[k - j].clone();
                }
            }
            inv[k] = -acc;
        }
        Ok(Self::from_terms(
            self.order,
            inv.into_iter().enumerate().map(|(k, c)| (HalfExponent(k as u32), c)),
        ))
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for UnivariateSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O(t^{})", HalfExponent(self.order.0 + 1));
        }
        for (e, c) in &self.coeffs {
            write!(f, "{c}*t^{e} + ")?;
        }
        write!(f, "O(t^{})", HalfExponent(self.order.0 + 1))
    }
}

/// Series in `t^(1/2)`, `z`, `z^-1`. Keys are `(exponent, charge)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateSeries<C> {
    coeffs: BTreeMap<(HalfExponent, i32), C>,
    order: Order,
}

impl<C: Coefficient> BivariateSeries<C> {
    pub fn zero(order: Order) -> Self {
        Self { coeffs: BTreeMap::new(), order }
    }

    pub fn one(order: Order) -> Self {
        Self::from_terms(order, [((HalfExponent::ZERO, 0), C::one())])
    }

    pub fn from_terms(
        order: Order,
        terms: impl IntoIterator<Item = ((HalfExponent, i32), C)>,
    ) -> Self {
        let mut s = Self::zero(order);
        for ((e, q), c) in terms {
            s.add_term(e, q, c);
        }
        s
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn coeff(&self, e: HalfExponent, charge: i32) -> C {
        self.coeffs.get(&(e, charge)).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (HalfExponent, i32, &C)> + '_ {
        self.coeffs.iter().map(|((e, q), c)| (*e, *q, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds a term. Charges with `|q|` above the order cannot occur in any
    /// character and are dropped along with exponents above the order.
    pub fn add_term(&mut self, e: HalfExponent, charge: i32, c: C) {
        if !self.order.keeps(e) || charge.unsigned_abs() > self.order.0 || c.is_zero() {
            return;
        }
        let sum = self.coeff(e, charge) + c;
        if sum.is_zero() {
            self.coeffs.remove(&(e, charge));
        } else {
            self.coeffs.insert((e, charge), sum);
        }
    }

    pub fn set_coeff(&mut self, e: HalfExponent, charge: i32, c: C) {
        self.coeffs.remove(&(e, charge));
        self.add_term(e, charge, c);
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        check_orders(self.order, other.order)?;
        let mut out = Self::zero(self.order);
        for ((ea, qa), ca) in &self.coeffs {
            for ((eb, qb), cb) in &other.coeffs {
                let e = HalfExponent(ea.0 + eb.0);
                if !self.order.keeps(e) {
                    break;
                }
                out.add_term(e, qa + qb, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// Charge-zero row.
    pub fn z0_slice(&self) -> UnivariateSeries<C> {
        UnivariateSeries::from_terms(
            self.order,
            self.coeffs
                .iter()
                .filter(|((_, q), _)| *q == 0)
                .map(|((e, _), c)| (*e, c.clone())),
        )
    }

    /// Embeds a `t`-only series as the charge-zero row.
    pub fn from_univariate(s: &UnivariateSeries<C>) -> Self {
        Self::from_terms(s.order, s.terms().map(|(e, c)| ((e, 0), c.clone())))
    }

    /// First key (in ascending order) where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<(HalfExponent, i32, C, C)> {
        let mut keys: Vec<_> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|(e, q)| {
            let a = self.coeff(e, q);
            let b = other.coeff(e, q);
            (a != b).then_some((e, q, a, b))
        })
    }
}

impl<C: Coefficient + Signed> BivariateSeries<C> {
    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }
}

/// `prod_{k>=1} (1 - t^k)` truncated at `order`.
pub fn euler_phi<C: Coefficient>(order: Order) -> UnivariateSeries<C> {
    let mut acc = UnivariateSeries::one(order);
    let mut k = 1;
    while 2 * k <= order.0 {
        let factor = UnivariateSeries::from_terms(
            order,
            [(HalfExponent::ZERO, C::one()), (HalfExponent::integer(k), -C::one())],
        );
        acc = acc.mul(&factor).expect("same order");
        k += 1;
    }
    acc
}

/// Generating function of integer partitions, `1 / euler_phi`.
pub fn partition_gf<C: Coefficient>(order: Order) -> UnivariateSeries<C> {
    euler_phi::<C>(order)
        .invert_unit()
        .expect("euler_phi has constant term 1")
}

/// Graded character `prod_{r in N0 + 1/2} (1 + z t^r)(1 + z^-1 t^r)` of the
/// complex fermion.
pub fn fermionic_character<C: Coefficient>(order: Order) -> BivariateSeries<C> {
    let mut acc = BivariateSeries::one(order);
    let mut r2 = 1;
    while r2 <= order.0 {
        let e = HalfExponent(r2);
        for charge in [1, -1] {
            let factor = BivariateSeries::from_terms(
                order,
                [((HalfExponent::ZERO, 0), C::one()), ((e, charge), C::one())],
            );
            acc = acc.mul(&factor).expect("same order");
        }
        r2 += 2;
    }
    acc
}

/// Theta side `p(t) * sum_{q in Z} z^q t^{q^2/2}`.
pub fn theta_jacobi<C: Coefficient>(order: Order) -> BivariateSeries<C> {
    let mut theta = BivariateSeries::zero(order);
    let bound = order.0 as i64;
    for q in -bound..=bound {
        let e2 = q * q;
        if e2 <= bound {
            theta.add_term(HalfExponent(e2 as u32), q as i32, C::one());
        }
    }
    let p = BivariateSeries::from_univariate(&partition_gf::<C>(order));
    p.mul(&theta).expect("same order")
}

/// Exact coefficient-by-coefficient comparison of two bivariate series.
pub fn compare_series<C: Coefficient + fmt::Display>(
    name: &str,
    lhs: &BivariateSeries<C>,
    rhs: &BivariateSeries<C>,
    anchor: &str,
) -> CheckReport {
    let mismatch = if lhs.order != rhs.order {
        Some(format!("orders differ: {} vs {}", lhs.order.0, rhs.order.0))
    } else {
        lhs.first_difference(rhs)
            .map(|(e, q, a, b)| format!("coefficient of z^{q} t^{e}: {a} != {b}"))
    };
    CheckReport::exact(name, mismatch, anchor)
}

pub const JACOBI_ANCHOR: &str =
    "prod (1+z t^r)(1+z^-1 t^r) = p(t) sum_q z^q t^(q^2/2) (Jacobi triple product)";
pub const FIXED_POINT_ANCHOR: &str = "charge-zero row of the fermionic character = p(t) = 1/phi(t)";

/// Jacobi triple product identity, exact up to `order`.
pub fn jacobi_identity_check<C: Coefficient + fmt::Display>(order: Order) -> CheckReport {
    compare_series(
        &format!("jacobi_triple_product[order={}]", order.0),
        &fermionic_character::<C>(order),
        &theta_jacobi::<C>(order),
        JACOBI_ANCHOR,
    )
}

/// Charge-zero row of the fermionic character against the partition series.
pub fn fixed_point_character_check<C: Coefficient + fmt::Display>(order: Order) -> CheckReport {
    let lhs = BivariateSeries::from_univariate(&fermionic_character::<C>(order).z0_slice());
    let rhs = BivariateSeries::from_univariate(&partition_gf::<C>(order));
    compare_series(
        &format!("z0_slice_equals_partition_gf[order={}]", order.0),
        &lhs,
        &rhs,
        FIXED_POINT_ANCHOR,
    )
}
