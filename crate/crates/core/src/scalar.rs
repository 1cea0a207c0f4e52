//! Scalar abstraction shared by the numeric routines.
//!
//! Everything that needs square roots, trigonometry or a factorization is
//! generic over [`Real`]; the pure invariant polynomials only need a ring and
//! are generic over `num_traits::Num` instead, so they also run on exact
//! rationals.

use std::fmt::{Debug, Display};

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::{FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the crate computes in: `f32` or `f64`.
pub trait Real:
    RealField + Copy + FloatConst + FromPrimitive + ToPrimitive + Display + Debug + Send + Sync + 'static
{
    /// Absolute tolerance for normalization and unitarity checks at this precision.
    const CHECK_TOL: f64;

    /// Converts an `f64` literal into this type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal fits every Real")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const CHECK_TOL: f64 = 1e-9;
}

impl Real for f32 {
    const CHECK_TOL: f64 = 1e-4;
}

/// Complex amplitude over a real scalar.
pub type Amplitude<T> = Complex<T>;

#[inline]
pub(crate) fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub(crate) fn creal<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Modulus of a complex number, computed without overflow-prone squaring.
#[inline]
pub(crate) fn cabs<T: Real>(z: Complex<T>) -> T {
    z.re.hypot(z.im)
}

#[inline]
pub(crate) fn carg<T: Real>(z: Complex<T>) -> T {
    z.im.atan2(z.re)
}

#[inline]
pub(crate) fn cpolar<T: Real>(r: T, phase: T) -> Complex<T> {
    Complex::new(r * phase.cos(), r * phase.sin())
}

#[inline]
pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Binomial coefficient as a float; exact for the qubit counts used here.
pub(crate) fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    T::lit(acc.round())
}
