//! Majorana constellations of permutation-symmetric qubit states.
//!
//! A symmetric `N`-qubit state `Σ_k c_k |D_k>` (Dicke basis, `k` excitations)
//! maps to the binary form
//!
//! ```text
//! F(z, w) = Σ_k (-1)^k sqrt(C(N,k)) c_k z^(N-k) w^k
//! ```
//!
//! whose `N` roots on the Riemann sphere are the stars. A root `ζ` sits at
//! `ζ = tan(θ/2) e^{iφ}`, so `|0>` (north pole) gives `ζ = 0` and every unit of
//! degree deficit of `p(z) = F(z, 1)` is a star at the south pole `θ = π`.
//! With this convention the coherent state `(cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>)^⊗N`
//! has all `N` stars at `(θ, φ)`.

pub mod discriminant;
pub mod roots;

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{binomial, cabs, cpolar, creal, czero, Real};
use crate::state::StateVector;

pub use discriminant::{form_discriminant, normalized_form_discriminant};
pub use roots::Spinor;

/// Default chordal distance below which roots are merged unconditionally.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;
/// Normalized discriminants below this modulus count as zero.
pub const DISCRIMINANT_ZERO_TOL: f64 = 1e-8;
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-9;

/// Coefficients of a symmetric state in the Dicke basis, normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeExpansion<T: Real> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> DickeExpansion<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument("a Dicke expansion needs at least one qubit".into()));
        }
        let norm = coeffs.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr()).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        Ok(Self { coeffs: coeffs.into_iter().map(|c| c.unscale(norm)).collect() })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Full `2^N` amplitude vector.
    pub fn to_state(&self) -> Result<StateVector<T>> {
        let n = self.n();
        let weights: Vec<Complex<T>> =
            self.coeffs.iter().enumerate().map(|(k, c)| c.unscale(binomial::<T>(n, k).sqrt())).collect();
        let amps = (0..1usize << n).map(|x| weights[x.count_ones() as usize]).collect();
        StateVector::from_amplitudes(&vec![2; n], amps)
    }
}

/// Checks invariance under every adjacent transposition of qubits, then
/// projects onto the Dicke basis.
pub fn symmetrize_check<T: Real>(state: &StateVector<T>, tolerance: T) -> Result<DickeExpansion<T>> {
    if state.dims().iter().any(|&d| d != 2) {
        return Err(Error::DimensionMismatch { expected: vec![2; state.n_parties()], found: state.dims().to_vec() });
    }
    let n = state.n_parties();
    let amps = state.amplitudes();
    for a in 0..n.saturating_sub(1) {
        // Party a is bit (n-1-a) of the flat index.
        let (hi, lo) = (n - 1 - a, n - 2 - a);
        let mut deviation = T::zero();
        for (x, amp) in amps.iter().enumerate() {
            let (bh, bl) = ((x >> hi) & 1, (x >> lo) & 1);
            if bh != bl {
                let y = x ^ (1 << hi) ^ (1 << lo);
                deviation = deviation.max(cabs(*amp - amps[y]));
            }
        }
        if deviation > tolerance {
            return Err(Error::NotSymmetric { a, b: a + 1, deviation: deviation.to_f64_lossy() });
        }
    }
    let mut coeffs = vec![czero(); n + 1];
    for (x, amp) in amps.iter().enumerate() {
        coeffs[x.count_ones() as usize] += amp;
    }
    for (k, c) in coeffs.iter_mut().enumerate() {
        *c = c.unscale(binomial::<T>(n, k).sqrt());
    }
    DickeExpansion::new(coeffs)
}

/// `F(z, w) = Σ_k a_k z^(N-k) w^k`; `a_k` is stored at index `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaPolynomial<T: Real> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> MajoranaPolynomial<T> {
    pub fn from_form(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument("a Majorana polynomial needs N >= 1".into()));
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::DegeneratePolynomial);
        }
        Ok(Self { coeffs })
    }

    /// Number of qubits (formal degree).
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^(N-k)`, i.e. descending powers of `p(z) = F(z, 1)`.
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Actual degree of `p(z)`; `N - degree` stars sit at infinity.
    pub fn degree(&self) -> usize {
        self.n() - self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.n())
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs.iter().fold(czero(), |acc, c| acc * z + c)
    }
}

pub fn majorana_polynomial<T: Real>(d: &DickeExpansion<T>) -> Result<MajoranaPolynomial<T>> {
    let n = d.n();
    let coeffs = d
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let s = binomial::<T>(n, k).sqrt();
            let s = if k % 2 == 1 { -s } else { s };
            c.scale(s)
        })
        .collect();
    MajoranaPolynomial::from_form(coeffs)
}

/// A star on the unit sphere with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpherePoint<T> {
    pub theta: T,
    pub phi: T,
    pub multiplicity: usize,
}

impl<T: Real> SpherePoint<T> {
    pub fn new(theta: T, phi: T) -> Self {
        Self { theta, phi, multiplicity: 1 }
    }

    pub fn north() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn south() -> Self {
        Self::new(T::pi(), T::zero())
    }

    pub fn spinor(&self) -> Spinor<T> {
        Spinor::from_angles(self.theta, self.phi)
    }

    pub fn to_vec3(&self) -> [T; 3] {
        self.spinor().to_vec3()
    }

    /// Euclidean distance on the unit sphere.
    pub fn chordal(&self, other: &Self) -> T {
        self.spinor().chordal(other.spinor())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajoranaConstellation<T> {
    pub n: usize,
    /// Distinct stars, by decreasing multiplicity then increasing `θ`, `φ`.
    pub stars: Vec<SpherePoint<T>>,
    pub distinct_count: usize,
    /// Multiplicities, descending.
    pub partition: Vec<usize>,
    /// Discriminant of the form at unit Bombieri norm.
    pub discriminant: Complex<T>,
}

impl<T: Real> MajoranaConstellation<T> {
    /// Some star is repeated.
    pub fn is_degenerate(&self) -> bool {
        self.partition.first().is_some_and(|&m| m >= 2)
    }

    pub fn discriminant_vanishes(&self, tolerance: T) -> bool {
        cabs(self.discriminant) < tolerance
    }
}

/// Stars of `poly`: companion-matrix roots, plus `N - degree` stars at the
/// south pole, grouped by chordal distance.
pub fn find_stars<T: Real>(poly: &MajoranaPolynomial<T>, cluster_tol: T) -> Result<MajoranaConstellation<T>> {
    let clusters = roots::cluster_roots(poly.coeffs(), cluster_tol)?;
    let mut stars: Vec<SpherePoint<T>> = clusters
        .iter()
        .map(|c| {
            let (theta, phi) = c.point.angles();
            SpherePoint { theta, phi, multiplicity: c.multiplicity }
        })
        .collect();
    stars.sort_by(|a, b| {
        b.multiplicity
            .cmp(&a.multiplicity)
            .then(a.theta.partial_cmp(&b.theta).unwrap_or(Ordering::Equal))
            .then(a.phi.partial_cmp(&b.phi).unwrap_or(Ordering::Equal))
    });
    let partition: Vec<usize> = stars.iter().map(|s| s.multiplicity).collect();
    let total: usize = partition.iter().sum();
    if total != poly.n() {
        return Err(Error::Numeric(format!("found {total} stars for {} qubits", poly.n())));
    }
    Ok(MajoranaConstellation {
        n: poly.n(),
        distinct_count: stars.len(),
        partition,
        stars,
        discriminant: binary_discriminant(poly)?,
    })
}

/// Discriminant of the homogenized Majorana form at unit Bombieri norm;
/// zero iff two stars coincide (including at infinity).
pub fn binary_discriminant<T: Real>(poly: &MajoranaPolynomial<T>) -> Result<Complex<T>> {
    normalized_form_discriminant(poly.coeffs())
}

/// Spin-`n/2` coherent state with all `n` stars at `direction`.
pub fn coherent_state<T: Real>(direction: &SpherePoint<T>, n: usize) -> Result<DickeExpansion<T>> {
    if n < 1 {
        return Err(Error::InvalidArgument("coherent states need n >= 1".into()));
    }
    let half = direction.theta * T::lit(0.5);
    let (c, s) = (half.cos(), half.sin());
    let coeffs = (0..=n)
        .map(|k| {
            let mag = binomial::<T>(n, k).sqrt() * c.powi((n - k) as i32) * s.powi(k as i32);
            cpolar(mag, direction.phi * T::from_usize(k).unwrap())
        })
        .collect();
    DickeExpansion::new(coeffs)
}

/// Position in the chain from coherent (level 1) to `N` distinct stars.
/// Levels are only comparable for the same `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OnionLevel {
    pub level: usize,
    pub n: usize,
}

impl OnionLevel {
    pub fn is_coherent(&self) -> bool {
        self.level == 1
    }

    /// All stars distinct.
    pub fn is_top(&self) -> bool {
        self.level == self.n
    }
}

impl PartialOrd for OnionLevel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.n == other.n).then(|| self.level.cmp(&other.level))
    }
}

#[derive(Debug, Clone)]
pub struct SymmetricClassification<T: Real> {
    pub dicke: DickeExpansion<T>,
    pub polynomial: MajoranaPolynomial<T>,
    pub constellation: MajoranaConstellation<T>,
    pub onion: OnionLevel,
}

pub fn classify_symmetric<T: Real>(state: &StateVector<T>) -> Result<SymmetricClassification<T>> {
    classify_symmetric_with(state, T::lit(DEFAULT_SYMMETRY_TOL), T::lit(DEFAULT_CLUSTER_TOL))
}

pub fn classify_symmetric_with<T: Real>(
    state: &StateVector<T>,
    symmetry_tol: T,
    cluster_tol: T,
) -> Result<SymmetricClassification<T>> {
    let dicke = symmetrize_check(state, symmetry_tol)?;
    classify_dicke(dicke, cluster_tol)
}

pub fn classify_dicke<T: Real>(dicke: DickeExpansion<T>, cluster_tol: T) -> Result<SymmetricClassification<T>> {
    let polynomial = majorana_polynomial(&dicke)?;
    let constellation = find_stars(&polynomial, cluster_tol)?;
    let onion = OnionLevel { level: constellation.distinct_count, n: constellation.n };
    Ok(SymmetricClassification { dicke, polynomial, constellation, onion })
}

/// Dicke expansion of the symmetrized product of single-qubit states with
/// Bloch directions `points`, i.e. the state whose stars are `points`.
pub fn state_from_stars<T: Real>(points: &[SpherePoint<T>]) -> Result<DickeExpansion<T>> {
    let spinors: Vec<Spinor<T>> =
        points.iter().flat_map(|p| std::iter::repeat_n(p.spinor(), p.multiplicity.max(1))).collect();
    let n = spinors.len();
    // Π (β_i z - α_i w) with [α : β] = [z_i : w_i].
    let mut form = vec![creal(T::one())];
    for s in &spinors {
        let mut next = vec![czero(); form.len() + 1];
        for (k, a) in form.iter().enumerate() {
            next[k] += *a * s.w;
            next[k + 1] -= *a * s.z;
        }
        form = next;
    }
    let coeffs = form
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let s = binomial::<T>(n, k).sqrt();
            let s = if k % 2 == 1 { -s } else { s };
            a.unscale(s)
        })
        .collect();
    DickeExpansion::new(coeffs)
}
