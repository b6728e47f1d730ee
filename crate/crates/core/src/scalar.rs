//! Scalar traits the rest of the crate is generic over.
//!
//! Exact modules (`series`, `fock`) work over any ring/field satisfying
//! [`Coefficient`] / [`Field`], instantiated with big integers and big
//! rationals. Numerical modules (`inner`, `scatter`) work over [`Real`],
//! instantiated with `f32` or `f64`.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};
use std::fmt::Debug;
use std::ops::Neg;

/// Commutative ring with exact equality, e.g. `BigInt`, `i64`, `BigRational`.
pub trait Coefficient: Clone + Num + Neg<Output = Self> + Debug + Send + Sync {}

impl<T> Coefficient for T where T: Clone + Num + Neg<Output = Self> + Debug + Send + Sync {}

/// Ordered field. Complex scalars of the Fock module are `Complex<F>`.
pub trait Field: Coefficient + PartialOrd + Signed + FromPrimitive + ToPrimitive {}

impl<T> Field for T where T: Coefficient + PartialOrd + Signed + FromPrimitive + ToPrimitive {}

/// Floating point type: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Signed + Debug + Send + Sync + 'static + rustfft::FftNum
{
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("representable literal")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `i` in `Complex<T>` for any ring `T`.
pub fn imag_unit<T: Num + Clone>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}
