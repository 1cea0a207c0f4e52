//! Three-qutrit invariants on the three-parameter normal form
//!
//! ```text
//! a1 (|111> + |222> + |333>) + a2 (|123> + |231> + |312>) + a3 (|132> + |213> + |321>)
//! ```
//!
//! with labels `1..=3` stored as `0..=2`. The invariants `I6`, `I9`, `I12`,
//! Bremner's `J12` and the 3x3x3 hyperdeterminant `Δ` are polynomials in
//! `(a1, a2, a3)` and are evaluated over any field `R` (complex floats,
//! rationals, ...). They are always evaluated on the coefficients as given,
//! never on the normalized state.

use num_complex::Complex;
use num_traits::{Num, Zero};
use serde::Serialize;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::scalar::{cabs, Real};
use crate::state::StateVector;

/// Relative tolerance for the `-I12 - I6^2 = 24 J12` consistency check.
pub const REPORT_REL_TOL: f64 = 1e-9;

/// Small nonnegative integer constant in a generic ring.
pub(crate) fn int<R: Num + Clone>(n: u32) -> R {
    let mut acc = R::zero();
    let mut base = R::one();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        k >>= 1;
    }
    acc
}

fn pow<R: Num + Clone>(x: &R, e: u32) -> R {
    (0..e).fold(R::one(), |acc, _| acc * x.clone())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalFormCoefficients<R> {
    pub a1: R,
    pub a2: R,
    pub a3: R,
}

impl<R: Num + Clone> NormalFormCoefficients<R> {
    pub fn new(a1: R, a2: R, a3: R) -> Result<Self> {
        if a1.is_zero() && a2.is_zero() && a3.is_zero() {
            return Err(Error::InvalidArgument("normal-form coefficients are all zero".into()));
        }
        Ok(Self { a1, a2, a3 })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QutritInvariantReport<R> {
    pub i6: R,
    pub i9: R,
    pub i12: R,
    pub j12: R,
    pub delta: R,
}

const DIAGONAL: [[usize; 3]; 3] = [[0, 0, 0], [1, 1, 1], [2, 2, 2]];
const CYCLIC: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
const ANTICYCLIC: [[usize; 3]; 3] = [[0, 2, 1], [1, 0, 2], [2, 1, 0]];

/// Normalized 3x3x3 state carrying the normal-form weights.
pub fn build_normal_form_state<T: Real>(coeffs: &NormalFormCoefficients<Complex<T>>) -> Result<StateVector<T>> {
    let entries = DIAGONAL
        .iter()
        .map(|i| (i, coeffs.a1))
        .chain(CYCLIC.iter().map(|i| (i, coeffs.a2)))
        .chain(ANTICYCLIC.iter().map(|i| (i, coeffs.a3)));
    StateVector::from_entries(&[3, 3, 3], entries)
}

/// `Δ = I6^3 I9^2 - I6^2 J12^2 + 36 I6 I9^2 J12 + 108 I9^4 - 32 J12^3`.
pub fn delta_from_invariants<R: Num + Clone>(i6: &R, i9: &R, j12: &R) -> R {
    let i9_2 = pow(i9, 2);
    pow(i6, 3) * i9_2.clone() - pow(i6, 2) * pow(j12, 2)
        + int::<R>(36) * i6.clone() * i9_2 * j12.clone()
        + int::<R>(108) * pow(i9, 4)
        - int::<R>(32) * pow(j12, 3)
}

/// `Δ` in terms of `K = 24 J12 = -I12 - I6^2`, cleared of denominators:
/// `13824 Δ = 13824 I6^3 I9^2 - 24 I6^2 K^2 + 20736 I6 I9^2 K + 1492992 I9^4 - 32 K^3`.
/// The single division comes last, so its rounding is relative to `Δ`
/// itself rather than to the cancelling terms.
fn delta_from_k<R: Num + Clone>(i6: &R, i9: &R, k: &R) -> R {
    let i9_2 = pow(i9, 2);
    let scaled = int::<R>(13824) * pow(i6, 3) * i9_2.clone() - int::<R>(24) * pow(i6, 2) * pow(k, 2)
        + int::<R>(20736) * i6.clone() * i9_2 * k.clone()
        + int::<R>(1492992) * pow(i9, 4)
        - int::<R>(32) * pow(k, 3);
    scaled / int(13824)
}

/// `J12 = (-I12 - I6^2) / 24`.
pub fn bremner_j12<R: Num + Clone>(i6: &R, i12: &R) -> R {
    (R::zero() - i12.clone() - pow(i6, 2)) / int(24)
}

/// Evaluates `I6`, `I9`, `I12`, `J12` and `Δ` on the raw coefficients.
pub fn fundamental_invariants<R: Num + Clone>(coeffs: &NormalFormCoefficients<R>) -> QutritInvariantReport<R> {
    let (x, y, z) = (pow(&coeffs.a1, 3), pow(&coeffs.a2, 3), pow(&coeffs.a3, 3));
    let i6 = pow(&coeffs.a1, 6) + pow(&coeffs.a2, 6) + pow(&coeffs.a3, 6)
        - int::<R>(10) * (x.clone() * y.clone() + x.clone() * z.clone() + y.clone() * z.clone());
    let i9 = R::zero() - (x.clone() - y.clone()) * (x.clone() - z.clone()) * (y.clone() - z.clone());
    let s = x + y + z;
    let p = int::<R>(6) * coeffs.a1.clone() * coeffs.a2.clone() * coeffs.a3.clone();
    let i12 = R::zero() - s.clone() * (pow(&s, 3) + pow(&p, 3));
    let j12 = bremner_j12(&i6, &i12);
    let k = R::zero() - i12.clone() - pow(&i6, 2);
    let delta = delta_from_k(&i6, &i9, &k);
    QutritInvariantReport { i6, i9, i12, j12, delta }
}

/// Modulus of a ring element, used for relative consistency checks.
pub trait Modulus {
    fn modulus(&self) -> f64;
}

impl<T: Real> Modulus for Complex<T> {
    fn modulus(&self) -> f64 {
        cabs(*self).to_f64_lossy()
    }
}

impl Modulus for Complex<TwoFloat> {
    fn modulus(&self) -> f64 {
        f64::from(self.re).hypot(f64::from(self.im))
    }
}

/// Double-double complex numbers (about 32 significant digits).
pub type Wide = Complex<TwoFloat>;

impl<R: Num + Clone + Modulus> QutritInvariantReport<R> {
    /// Relative residual of `-I12 - I6^2 - 24 J12`.
    pub fn bremner_residual(&self) -> f64 {
        let lhs = R::zero() - self.i12.clone() - self.i6.clone() * self.i6.clone();
        let rhs = int::<R>(24) * self.j12.clone();
        let scale = 1f64.max(lhs.modulus()).max(rhs.modulus());
        (lhs - rhs).modulus() / scale
    }
}

/// `Δ` from a report, after checking the Bremner relation holds. `J12`
/// enters as `-I12 - I6^2`, which the check has just matched to `24 J12`.
pub fn hyperdeterminant_333<R: Num + Clone + Modulus>(report: &QutritInvariantReport<R>) -> Result<R> {
    let residual = report.bremner_residual();
    if !(residual <= REPORT_REL_TOL) {
        return Err(Error::InconsistentReport(format!("-I12 - I6^2 - 24 J12 has relative residual {residual:e}")));
    }
    let k = R::zero() - report.i12.clone() - pow(&report.i6, 2);
    Ok(delta_from_k(&report.i6, &report.i9, &k))
}

/// Invariants and `Δ` of double-precision coefficients. The terms of `Δ`
/// cancel by many orders of magnitude near its zero locus, so the
/// polynomials are evaluated in [`Wide`] arithmetic and rounded once.
pub fn qutrit_invariants<T: Real>(
    coeffs: &NormalFormCoefficients<Complex<T>>,
) -> Result<QutritInvariantReport<Complex<T>>> {
    let lift = |c: &Complex<T>| Wide::new(TwoFloat::from(c.re.to_f64_lossy()), TwoFloat::from(c.im.to_f64_lossy()));
    let wide = NormalFormCoefficients { a1: lift(&coeffs.a1), a2: lift(&coeffs.a2), a3: lift(&coeffs.a3) };
    let mut report = fundamental_invariants(&wide);
    report.delta = hyperdeterminant_333(&report)?;
    let lower = |c: &Wide| Complex::new(T::lit(f64::from(c.re)), T::lit(f64::from(c.im)));
    let out = QutritInvariantReport {
        i6: lower(&report.i6),
        i9: lower(&report.i9),
        i12: lower(&report.i12),
        j12: lower(&report.j12),
        delta: lower(&report.delta),
    };
    let all = [out.i6, out.i9, out.i12, out.j12, out.delta];
    if all.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::Numeric("qutrit invariants overflowed".into()));
    }
    Ok(out)
}

/// `Δ` of the normalized state: `Δ` is homogeneous of degree 36.
pub fn normalized_delta<T: Real>(delta: Complex<T>, norm_sqr: T) -> Complex<T> {
    delta.unscale(norm_sqr.powi(18))
}

/// The two-parameter family
/// `α (|321> + |123>) + β (|312> + |132> + |231> + |213>)`.
#[derive(Debug, Clone)]
pub struct PhiFamily<T: Real> {
    pub state: StateVector<T>,
    pub report: QutritInvariantReport<Complex<T>>,
    /// `Δ` through the invariant pipeline.
    pub delta: Complex<T>,
    /// `(4096/27) (α β^2)^12`.
    pub delta_closed_form: Complex<T>,
    /// `Δ` rescaled to the normalized state.
    pub delta_normalized: Complex<T>,
}

pub fn phi_family<T: Real>(alpha: Complex<T>, beta: Complex<T>) -> Result<PhiFamily<T>> {
    if alpha.is_zero() && beta.is_zero() {
        return Err(Error::InvalidArgument("alpha and beta are both zero".into()));
    }
    let entries = [[2, 1, 0], [0, 1, 2]]
        .iter()
        .map(|i| (i, alpha))
        .chain([[2, 0, 1], [0, 2, 1], [1, 2, 0], [1, 0, 2]].iter().map(|i| (i, beta)));
    let state = StateVector::from_entries(&[3, 3, 3], entries)?;

    let zero = Complex::new(T::zero(), T::zero());
    let i6 = -(alpha * alpha * beta.powu(4)).scale(T::lit(8.0));
    let i12 = zero;
    let report_without_delta = QutritInvariantReport { i6, i9: zero, i12, j12: bremner_j12(&i6, &i12), delta: zero };
    let delta = hyperdeterminant_333(&report_without_delta)?;
    let report = QutritInvariantReport { delta, ..report_without_delta };

    let delta_closed_form = (alpha * beta * beta).powu(12).scale(T::lit(4096.0) / T::lit(27.0));
    let norm_sqr = alpha.norm_sqr() * T::lit(2.0) + beta.norm_sqr() * T::lit(4.0);
    Ok(PhiFamily { state, delta, delta_closed_form, delta_normalized: normalized_delta(delta, norm_sqr), report })
}
