//! Discriminant of a binary form `F(z, w) = Σ a_k z^(n-k) w^k`.
//!
//! Computed homogeneously as the resultant of `∂F/∂z` and `∂F/∂w`, so a root
//! at infinity is handled like any other root:
//!
//! ```text
//! Res(F_z, F_w) = (-1)^(n(n-1)/2) n^(n-2) Disc(F),   Disc(F) = Π_{i<j} (α_i β_j - α_j β_i)^2
//! ```
//!
//! for `F = Π (β_i z - α_i w)`.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{binomial, cone, czero, Real};

/// Sylvester matrix of two forms given by z-descending coefficients.
pub fn sylvester_matrix<T: Real>(f: &[Complex<T>], g: &[Complex<T>]) -> DMatrix<Complex<T>> {
    let p = f.len() - 1;
    let q = g.len() - 1;
    let size = p + q;
    let mut m = DMatrix::zeros(size, size);
    for row in 0..q {
        for (j, c) in f.iter().enumerate() {
            m[(row, row + j)] = *c;
        }
    }
    for row in 0..p {
        for (j, c) in g.iter().enumerate() {
            m[(q + row, row + j)] = *c;
        }
    }
    m
}

/// Homogeneous resultant of two binary forms.
pub fn resultant<T: Real>(f: &[Complex<T>], g: &[Complex<T>]) -> Complex<T> {
    let m = sylvester_matrix(f, g);
    if m.nrows() == 0 {
        return cone();
    }
    m.determinant()
}

/// Discriminant of the form with coefficients `form[k]` on `z^(n-k) w^k`.
pub fn form_discriminant<T: Real>(form: &[Complex<T>]) -> Result<Complex<T>> {
    if form.len() < 2 {
        return Err(Error::InvalidArgument("a binary form needs degree n >= 1".into()));
    }
    let n = form.len() - 1;
    if n == 1 {
        return Ok(cone());
    }
    let dz: Vec<Complex<T>> = (0..n).map(|k| form[k].scale(T::from_usize(n - k).unwrap())).collect();
    let dw: Vec<Complex<T>> = (0..n).map(|j| form[j + 1].scale(T::from_usize(j + 1).unwrap())).collect();
    let res = resultant(&dz, &dw);
    let mut scale = T::from_usize(n).unwrap().powi(n as i32 - 2);
    if (n * (n - 1) / 2) % 2 == 1 {
        scale = -scale;
    }
    let out = res.unscale(scale);
    if !(out.re.is_finite() && out.im.is_finite()) {
        return Err(Error::Numeric("discriminant overflowed".into()));
    }
    Ok(out)
}

/// `Σ |a_k|^2 / C(n,k)`: the unitarily invariant norm of a binary form,
/// equal to the squared state norm for forms built from Dicke coefficients.
pub fn bombieri_norm_sqr<T: Real>(form: &[Complex<T>]) -> T {
    let n = form.len().saturating_sub(1);
    form.iter().enumerate().fold(T::zero(), |acc, (k, a)| acc + a.norm_sqr() / binomial::<T>(n, k))
}

/// Discriminant of the form rescaled to unit Bombieri norm. Its modulus is
/// unchanged when the same SU(2) rotation acts on every qubit.
pub fn normalized_form_discriminant<T: Real>(form: &[Complex<T>]) -> Result<Complex<T>> {
    let norm_sqr = bombieri_norm_sqr(form);
    if !(norm_sqr > T::zero()) {
        return Err(Error::DegeneratePolynomial);
    }
    let n = form.len() - 1;
    let disc = form_discriminant(form)?;
    if disc == czero() {
        return Ok(disc);
    }
    Ok(disc.unscale(norm_sqr.powi(n as i32 - 1)))
}
