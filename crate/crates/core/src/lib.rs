//! Verification laboratory for the free complex fermion, its U(1) current,
//! inner-function (Longo–Witten) unitaries and the two-particle S-matrix
//! they induce.
//!
//! * [`series`]: exact characters and the Jacobi triple product.
//! * [`fock`]: exact truncated Fock space, mode algebra and current.
//! * [`inner`]: inner functions, the 2x2 unitary and causality.
//! * [`scatter`]: the (1,1) sector, `e0` projection and `phi_tilde`.
//! * [`suite`]: the numbered end-to-end criteria over a [`catalog`] of
//!   inner functions.
//!
//! Exact modules are generic over the coefficient ring, numerical ones over
//! the float type; the aliases below fix the usual instantiations.

pub mod catalog;
pub mod fock;
pub mod inner;
pub mod quadrature;
pub mod report;
pub mod scatter;
pub mod scalar;
pub mod series;
pub mod suite;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use report::{CheckReport, Measured};

/// Exact complex scalar of the Fock module.
pub type ExactComplex = num_complex::Complex<BigRational>;
pub type ExactFockVector = fock::FockVector<BigRational>;
pub type ExactFockOperator = fock::FockOperator<BigRational>;
pub type ExactBlockMatrix = fock::BlockMatrix<BigRational>;
pub type BigSeries = series::UnivariateSeries<BigInt>;
pub type BigBivariateSeries = series::BivariateSeries<BigInt>;

pub type InnerFunction64 = inner::InnerFunction<f64>;
pub type InnerFunction32 = inner::InnerFunction<f32>;
pub type Kernel64 = scatter::Kernel11<f64>;
pub type BoseWave64 = scatter::BoseWave<f64>;
pub type Grid64 = scatter::Grid1D<f64>;
pub type Quadrature64 = quadrature::QuadratureSpec<f64>;
pub type ProductionReport64 = scatter::ProductionReport<f64>;
