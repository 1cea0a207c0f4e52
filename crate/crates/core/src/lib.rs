//! Entanglement invariants of pure multipartite states.
//!
//! * [`state`]: dense states, local unitaries, Bell/GHZ/W constructors
//! * [`bipartite`]: Schmidt decomposition, product tests, the 2x2 determinant
//! * [`hyperdet`]: Cayley's 2x2x2 hyperdeterminant
//! * [`qutrit`]: normal-form invariants `I6`, `I9`, `I12`, `J12` and `Δ` for 3x3x3
//! * [`majorana`]: stellar representation of symmetric qubit states
//! * [`sampling`]: Haar local unitaries and invariance checks
//! * [`classify`]: a combined per-state report
//!
//! Numeric code is generic over [`Real`] (`f32`/`f64`); the invariant
//! polynomials accept any `num_traits::Num` ring, including exact rationals.
//! The aliases below fix the common double-precision instantiation.

// `!(x > 0)` style tests are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bipartite;
pub mod classify;
pub mod error;
pub mod hyperdet;
pub mod io;
pub mod majorana;
pub mod qutrit;
pub mod sampling;
pub mod scalar;
pub mod state;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::{Amplitude, Real};

pub type Complex64 = Complex<f64>;
pub type StateVector64 = state::StateVector<f64>;
pub type StateVector32 = state::StateVector<f32>;
pub type LocalUnitary64 = state::LocalUnitary<f64>;
pub type SchmidtDecomposition64 = bipartite::SchmidtDecomposition<f64>;
pub type DickeExpansion64 = majorana::DickeExpansion<f64>;
pub type MajoranaPolynomial64 = majorana::MajoranaPolynomial<f64>;
pub type MajoranaConstellation64 = majorana::MajoranaConstellation<f64>;
pub type SpherePoint64 = majorana::SpherePoint<f64>;
pub type NormalFormCoefficients64 = qutrit::NormalFormCoefficients<Complex64>;
pub type QutritInvariantReport64 = qutrit::QutritInvariantReport<Complex64>;
