//! Cayley's 2x2x2 hyperdeterminant and the three-qubit class test it gives.

use num_complex::Complex;
use num_traits::Num;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{cabs, Real};
use crate::state::StateVector;

pub const DEFAULT_CLASS_TOL: f64 = 1e-10;

/// Hyperdeterminant of the tensor `c[4i + 2j + k] = c_ijk`, expanded term
/// by term: four squared pairs, six `-2` quadruples and two `+4` quadruples.
pub fn cayley_hyperdeterminant_coeffs<R: Num + Clone>(c: &[R; 8]) -> R {
    let [c000, c001, c010, c011, c100, c101, c110, c111] = c.clone();
    let two = R::one() + R::one();
    let four = two.clone() + two.clone();
    let sq = |x: &R| x.clone() * x.clone();
    let q = |a: &R, b: &R, c: &R, d: &R| a.clone() * b.clone() * c.clone() * d.clone();

    let squares = sq(&c000) * sq(&c111) + sq(&c001) * sq(&c110) + sq(&c010) * sq(&c101) + sq(&c100) * sq(&c011);
    let doubles = q(&c000, &c001, &c110, &c111)
        + q(&c000, &c010, &c101, &c111)
        + q(&c000, &c011, &c100, &c111)
        + q(&c001, &c010, &c101, &c110)
        + q(&c001, &c011, &c110, &c100)
        + q(&c010, &c011, &c101, &c100);
    let quads = q(&c000, &c011, &c101, &c110) + q(&c001, &c010, &c100, &c111);
    squares - two * doubles + four * quads
}

fn three_qubit_amplitudes<T: Real>(state: &StateVector<T>) -> Result<[Complex<T>; 8]> {
    if state.dims() != [2, 2, 2] {
        return Err(Error::DimensionMismatch { expected: vec![2, 2, 2], found: state.dims().to_vec() });
    }
    let a = state.amplitudes();
    Ok(std::array::from_fn(|i| a[i]))
}

pub fn cayley_hyperdeterminant<T: Real>(state: &StateVector<T>) -> Result<Complex<T>> {
    Ok(cayley_hyperdeterminant_coeffs(&three_qubit_amplitudes(state)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ThreeQubitClass {
    /// `Det != 0`.
    #[serde(rename = "GHZClass")]
    GhzClass,
    /// `Det = 0`: W-type and all (bi)product states.
    #[serde(rename = "DegenerateClass")]
    Degenerate,
}

impl std::fmt::Display for ThreeQubitClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::GhzClass => "GHZClass",
            Self::Degenerate => "DegenerateClass",
        })
    }
}

/// GHZ class iff `|Det| > tolerance`.
pub fn classify_three_qubit<T: Real>(state: &StateVector<T>, tolerance: T) -> Result<ThreeQubitClass> {
    let det = cayley_hyperdeterminant(state)?;
    Ok(if cabs(det) > tolerance { ThreeQubitClass::GhzClass } else { ThreeQubitClass::Degenerate })
}
