//! Haar-random local unitaries and Monte-Carlo invariance checks.
//!
//! Randomness comes from a [`SeedStream`]: a ChaCha20 keystream keyed by the
//! seed, with the stream number as counter. Equal `(seed, counter)` pairs
//! always replay the same sequence, and trial `t` of a suite draws only from
//! counter `t`, so trials can run in any order.

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::bipartite::{bipartite_determinant, schmidt_rank, Cut, DEFAULT_RANK_TOL};
use crate::error::{Error, Result};
use crate::hyperdet::cayley_hyperdeterminant;
use crate::scalar::{cabs, carg, cpolar, creal, Real};
use crate::state::{flat_index, LocalUnitary, StateVector};

/// Splittable counter-based random source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeedStream {
    pub seed: u64,
    pub counter: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    /// Independent substream `counter` of the same seed.
    pub fn split(&self, counter: u64) -> Self {
        Self { seed: self.seed, counter }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.counter);
        rng
    }
}

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

/// Haar SU(2) element from a uniformly random unit quaternion `(a, b, c, d)`:
/// `[[a + ib, c + id], [-c + id, a - ib]]`.
pub fn random_su2<T: Real, R: Rng + ?Sized>(rng: &mut R) -> DMatrix<Complex<T>> {
    let q: [T; 4] = loop {
        let q: [T; 4] = [gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)];
        let norm = q.iter().fold(T::zero(), |acc, x| acc + *x * *x).sqrt();
        if norm > T::lit(1e-6) {
            break q.map(|x| x / norm);
        }
    };
    let [a, b, c, d] = q;
    DMatrix::from_row_slice(2, 2, &[Complex::new(a, b), Complex::new(c, d), Complex::new(-c, d), Complex::new(a, -b)])
}

/// Haar U(d): QR of a complex Ginibre matrix with the phases of `R`'s
/// diagonal moved into `Q`.
pub fn random_ud<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DMatrix<Complex<T>>> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("unitary dimension must be >= 2, got {d}")));
    }
    let half = T::lit(0.5).sqrt();
    let z = DMatrix::from_fn(d, d, |_, _| Complex::new(gaussian::<T, R>(rng), gaussian(rng)).scale(half));
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let rjj = r[(j, j)];
        let mag = cabs(rjj);
        if !(mag > T::zero()) {
            return Err(Error::Numeric("singular Ginibre sample".into()));
        }
        let phase = rjj.unscale(mag);
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

/// Haar SU(d): a Haar U(d) sample divided by the principal `d`-th root of its determinant.
pub fn random_sud<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DMatrix<Complex<T>>> {
    let u = random_ud::<T, R>(d, rng)?;
    let det = u.determinant();
    let root = cpolar(T::one(), carg(det) / T::from_usize(d).unwrap());
    Ok(u.map(|x| x / root))
}

/// Per-party group to sample from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    SpecialUnitary,
    Unitary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    pub dims: Vec<usize>,
    pub kind: GroupKind,
}

impl GroupSpec {
    pub fn special(dims: &[usize]) -> Self {
        Self { dims: dims.to_vec(), kind: GroupKind::SpecialUnitary }
    }

    pub fn unitary(dims: &[usize]) -> Self {
        Self { dims: dims.to_vec(), kind: GroupKind::Unitary }
    }

    pub fn sample<T: Real, R: Rng + ?Sized>(&self, rng: &mut R) -> Result<LocalUnitary<T>> {
        let factors = self
            .dims
            .iter()
            .map(|&d| match (self.kind, d) {
                (GroupKind::SpecialUnitary, 2) => Ok(random_su2(rng)),
                (GroupKind::SpecialUnitary, _) => random_sud(d, rng),
                (GroupKind::Unitary, _) => random_ud(d, rng),
            })
            .collect::<Result<Vec<_>>>()?;
        LocalUnitary::new(factors)
    }
}

/// A scalar functional of a state whose invariance is under test.
pub trait Invariant<T: Real> {
    fn name(&self) -> String;
    fn evaluate(&self, state: &StateVector<T>) -> Result<Complex<T>>;
}

/// The built-in evaluators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedInvariant {
    Norm,
    BipartiteDeterminant,
    CayleyHyperdeterminant,
    SchmidtRank(Cut),
    /// A single amplitude; not invariant, used as a negative control.
    Amplitude(Vec<usize>),
}

impl<T: Real> Invariant<T> for NamedInvariant {
    fn name(&self) -> String {
        match self {
            Self::Norm => "norm".into(),
            Self::BipartiteDeterminant => "det".into(),
            Self::CayleyHyperdeterminant => "hyperdet3q".into(),
            Self::SchmidtRank(cut) => format!("schmidt-rank{:?}", cut.parties()),
            Self::Amplitude(idx) => format!("amplitude{idx:?}"),
        }
    }

    fn evaluate(&self, state: &StateVector<T>) -> Result<Complex<T>> {
        match self {
            Self::Norm => Ok(creal(state.norm())),
            Self::BipartiteDeterminant => bipartite_determinant(state),
            Self::CayleyHyperdeterminant => cayley_hyperdeterminant(state),
            Self::SchmidtRank(cut) => {
                Ok(creal(T::from_usize(schmidt_rank(state, cut, T::lit(DEFAULT_RANK_TOL))?).unwrap()))
            }
            Self::Amplitude(idx) => Ok(state.amplitudes()[flat_index(state.dims(), idx)?]),
        }
    }
}

/// Wraps a closure as an [`Invariant`].
pub struct FnInvariant<F> {
    pub name: String,
    pub f: F,
}

impl<T: Real, F: Fn(&StateVector<T>) -> Result<Complex<T>>> Invariant<T> for FnInvariant<F> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn evaluate(&self, state: &StateVector<T>) -> Result<Complex<T>> {
        (self.f)(state)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub invariant_name: String,
    pub group: GroupSpec,
    pub trials: usize,
    pub seed: u64,
    pub baseline_re: f64,
    pub baseline_im: f64,
    pub max_abs_drift: f64,
    pub mean_abs_drift: f64,
}

/// Applies a fresh random local unitary from `group` in every trial and
/// records `|I(Uψ) - I(ψ)|`.
pub fn invariance_suite<T, I>(
    state: &StateVector<T>,
    invariant: &I,
    group: &GroupSpec,
    trials: usize,
    seed: u64,
) -> Result<InvarianceReport>
where
    T: Real,
    I: Invariant<T> + ?Sized,
{
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    if group.dims != state.dims() {
        return Err(Error::DimensionMismatch { expected: state.dims().to_vec(), found: group.dims.clone() });
    }
    let baseline = invariant.evaluate(state)?;
    let stream = SeedStream::new(seed);
    let mut max = T::zero();
    let mut sum = T::zero();
    for t in 0..trials {
        let mut rng = stream.split(t as u64).rng();
        let u = group.sample::<T, _>(&mut rng)?;
        let value = invariant.evaluate(&state.apply_local_unitary(&u)?)?;
        let drift = cabs(value - baseline);
        max = max.max(drift);
        sum += drift;
    }
    Ok(InvarianceReport {
        invariant_name: invariant.name(),
        group: group.clone(),
        trials,
        seed,
        baseline_re: baseline.re.to_f64_lossy(),
        baseline_im: baseline.im.to_f64_lossy(),
        max_abs_drift: max.to_f64_lossy(),
        mean_abs_drift: (sum / T::from_usize(trials).unwrap()).to_f64_lossy(),
    })
}
