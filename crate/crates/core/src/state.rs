//! Dense multipartite pure states and local unitary action.
//!
//! Amplitudes are stored row-major over the multi-index `(i_0, ..., i_{N-1})`:
//! the flat position is `sum_k i_k * prod_{j>k} d_j`, so the last party varies
//! fastest. Party labels are 0-based everywhere.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cabs, cone, creal, czero, is_finite, Real};

/// Upper bound on the number of stored amplitudes.
pub const MAX_ENTRIES: usize = 1 << 24;

/// Normalized (unless built with [`StateVector::unnormalized`]) dense state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    dims: Vec<usize>,
    amplitudes: Vec<Complex<T>>,
}

pub(crate) fn validate_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::InvalidDims("at least one party is required".into()));
    }
    if let Some(d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidDims(format!("every party needs dimension >= 2, found {d}")));
    }
    let mut total: usize = 1;
    for &d in dims {
        total = total
            .checked_mul(d)
            .filter(|&t| t <= MAX_ENTRIES)
            .ok_or_else(|| Error::InvalidDims(format!("{dims:?} exceeds {MAX_ENTRIES} amplitudes")))?;
    }
    Ok(total)
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

impl<T: Real> StateVector<T> {
    /// Builds a normalized state from sparse `(multi-index, amplitude)` entries.
    /// Unlisted entries are zero.
    pub fn from_entries<I, M>(dims: &[usize], entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (M, Complex<T>)>,
        M: AsRef<[usize]>,
    {
        let total = validate_dims(dims)?;
        let mut amplitudes = vec![czero(); total];
        let mut seen = vec![false; total];
        for (index, amp) in entries {
            let index = index.as_ref();
            let flat = flat_index(dims, index)?;
            if seen[flat] {
                return Err(Error::DuplicateIndex(index.to_vec()));
            }
            if !is_finite(amp) {
                return Err(Error::NonFinite(index.to_vec()));
            }
            seen[flat] = true;
            amplitudes[flat] = amp;
        }
        Self::unnormalized(dims, amplitudes)?.normalized()
    }

    /// Builds a normalized state from a dense row-major amplitude array.
    pub fn from_amplitudes(dims: &[usize], amplitudes: Vec<Complex<T>>) -> Result<Self> {
        Self::unnormalized(dims, amplitudes)?.normalized()
    }

    /// Builds a state without normalizing it. Only the shape and finiteness
    /// are checked; the all-zero vector is allowed.
    pub fn unnormalized(dims: &[usize], amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let total = validate_dims(dims)?;
        if amplitudes.len() != total {
            return Err(Error::InvalidDims(format!(
                "{} amplitudes supplied for dims {dims:?} (need {total})",
                amplitudes.len()
            )));
        }
        if let Some(pos) = amplitudes.iter().position(|a| !is_finite(*a)) {
            return Err(Error::NonFinite(multi_index(dims, pos)));
        }
        Ok(Self { dims: dims.to_vec(), amplitudes })
    }

    /// Computational basis state `|i_0 ... i_{N-1}>`.
    pub fn basis(dims: &[usize], index: &[usize]) -> Result<Self> {
        Self::from_entries(dims, [(index, cone())])
    }

    /// Tensor product of single-party vectors, normalized.
    pub fn product(factors: &[Vec<Complex<T>>]) -> Result<Self> {
        let dims: Vec<usize> = factors.iter().map(Vec::len).collect();
        validate_dims(&dims)?;
        let mut amplitudes = vec![cone::<T>()];
        for f in factors {
            amplitudes = amplitudes.iter().flat_map(|a| f.iter().map(move |b| *a * *b)).collect();
        }
        Self::from_amplitudes(&dims, amplitudes)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitude(&self, index: &[usize]) -> Result<Complex<T>> {
        Ok(self.amplitudes[flat_index(&self.dims, index)?])
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(mut self) -> Result<Self> {
        let norm = self.norm();
        if !(norm > T::zero()) {
            return Err(Error::ZeroState);
        }
        if !norm.is_finite() {
            return Err(Error::Numeric("state norm overflowed".into()));
        }
        let inv = T::one() / norm;
        for a in &mut self.amplitudes {
            *a = a.scale(inv);
        }
        Ok(self)
    }

    /// Applies `U_0 ⊗ U_1 ⊗ ... ⊗ U_{N-1}`.
    pub fn apply_local_unitary(&self, u: &LocalUnitary<T>) -> Result<Self> {
        if u.dims() != self.dims {
            return Err(Error::DimensionMismatch { expected: self.dims.clone(), found: u.dims() });
        }
        let mut data = self.amplitudes.clone();
        for (party, factor) in u.factors.iter().enumerate() {
            data = apply_on_axis(&self.dims, &data, party, factor);
        }
        Ok(Self { dims: self.dims.clone(), amplitudes: data })
    }

    /// Applies a single-party operator to `party`, leaving the rest untouched.
    pub fn apply_single(&self, party: usize, op: &DMatrix<Complex<T>>) -> Result<Self> {
        if party >= self.dims.len() || op.shape() != (self.dims[party], self.dims[party]) {
            return Err(Error::DimensionMismatch {
                expected: self.dims.clone(),
                found: vec![op.nrows(); usize::from(party < self.dims.len())],
            });
        }
        let data = apply_on_axis(&self.dims, &self.amplitudes, party, op);
        Ok(Self { dims: self.dims.clone(), amplitudes: data })
    }

    /// `<self|other>`, conjugating `self`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<T>> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch { expected: self.dims.clone(), found: other.dims.clone() });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).fold(czero(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner_product(other)?.norm_sqr())
    }

    /// Reorders parties so that new party `k` is old party `order[k]`.
    pub fn permute_parties(&self, order: &[usize]) -> Result<Self> {
        let n = self.dims.len();
        let mut check = order.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument(format!("{order:?} is not a permutation of 0..{n}")));
        }
        let new_dims: Vec<usize> = order.iter().map(|&p| self.dims[p]).collect();
        let old_strides = strides(&self.dims);
        let mut out = Vec::with_capacity(self.amplitudes.len());
        let mut idx = vec![0usize; n];
        for _ in 0..self.amplitudes.len() {
            let src: usize = idx.iter().zip(order).map(|(&i, &p)| i * old_strides[p]).sum();
            out.push(self.amplitudes[src]);
            increment(&mut idx, &new_dims);
        }
        Ok(Self { dims: new_dims, amplitudes: out })
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch { expected: self.dims.clone(), found: other.dims.clone() });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| cabs(*a - *b)).fold(T::zero(), |m, x| m.max(x)))
    }
}

/// Row-major flat position of a multi-index.
pub fn flat_index(dims: &[usize], index: &[usize]) -> Result<usize> {
    if index.len() != dims.len() || index.iter().zip(dims).any(|(&i, &d)| i >= d) {
        return Err(Error::IndexOutOfRange { index: index.to_vec(), dims: dims.to_vec() });
    }
    Ok(index.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i))
}

/// Inverse of [`flat_index`].
pub fn multi_index(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = flat % dims[k];
        flat /= dims[k];
    }
    out
}

fn increment(idx: &mut [usize], dims: &[usize]) {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < dims[k] {
            return;
        }
        idx[k] = 0;
    }
}

fn apply_on_axis<T: Real>(
    dims: &[usize],
    data: &[Complex<T>],
    axis: usize,
    op: &DMatrix<Complex<T>>,
) -> Vec<Complex<T>> {
    let d = dims[axis];
    let inner: usize = dims[axis + 1..].iter().product();
    let outer: usize = dims[..axis].iter().product();
    let mut out = vec![czero(); data.len()];
    for o in 0..outer {
        let base = o * d * inner;
        for a in 0..d {
            for b in 0..d {
                let u = op[(a, b)];
                if u == czero() {
                    continue;
                }
                for i in 0..inner {
                    out[base + a * inner + i] += u * data[base + b * inner + i];
                }
            }
        }
    }
    out
}

/// One unitary factor per party.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary<T: Real> {
    factors: Vec<DMatrix<Complex<T>>>,
}

/// Largest entry of `|U^† U - I|`.
pub fn unitarity_residual<T: Real>(u: &DMatrix<Complex<T>>) -> T {
    let gram = u.adjoint() * u;
    let mut worst = T::zero();
    for i in 0..gram.nrows() {
        for j in 0..gram.ncols() {
            let target = if i == j { cone() } else { czero() };
            worst = worst.max(cabs(gram[(i, j)] - target));
        }
    }
    worst
}

impl<T: Real> LocalUnitary<T> {
    /// Checks each factor is square and unitary within `T::CHECK_TOL`.
    pub fn new(factors: Vec<DMatrix<Complex<T>>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidDims("a local unitary needs at least one factor".into()));
        }
        for (party, f) in factors.iter().enumerate() {
            if !f.is_square() || f.nrows() < 2 {
                return Err(Error::InvalidDims(format!("factor {party} has shape {:?}", f.shape())));
            }
            let residual = unitarity_residual(f);
            if !(residual <= T::lit(T::CHECK_TOL)) {
                return Err(Error::NotUnitary { party, residual: residual.to_f64_lossy() });
            }
        }
        Ok(Self { factors })
    }

    pub fn identity(dims: &[usize]) -> Self {
        Self { factors: dims.iter().map(|&d| DMatrix::identity(d, d)).collect() }
    }

    /// `op` on `party`, identity elsewhere.
    pub fn single(dims: &[usize], party: usize, op: DMatrix<Complex<T>>) -> Result<Self> {
        if party >= dims.len() {
            return Err(Error::InvalidArgument(format!("party {party} out of range for {} parties", dims.len())));
        }
        let mut factors: Vec<_> = dims.iter().map(|&d| DMatrix::identity(d, d)).collect();
        factors[party] = op;
        Self::new(factors)
    }

    pub fn factors(&self) -> &[DMatrix<Complex<T>>] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.nrows()).collect()
    }

    /// Factorwise product `then · self`: applying the result equals applying
    /// `self` first and `then` second.
    pub fn then(&self, then: &Self) -> Result<Self> {
        if self.dims() != then.dims() {
            return Err(Error::DimensionMismatch { expected: self.dims(), found: then.dims() });
        }
        Ok(Self { factors: self.factors.iter().zip(&then.factors).map(|(a, b)| b * a).collect() })
    }
}

/// Pauli and identity matrices on one qubit.
pub mod gates {
    use super::*;

    pub fn identity<T: Real>() -> DMatrix<Complex<T>> {
        DMatrix::identity(2, 2)
    }

    pub fn pauli_x<T: Real>() -> DMatrix<Complex<T>> {
        DMatrix::from_row_slice(2, 2, &[czero(), cone(), cone(), czero()])
    }

    pub fn pauli_z<T: Real>() -> DMatrix<Complex<T>> {
        DMatrix::from_row_slice(2, 2, &[cone(), czero(), czero(), -cone::<T>()])
    }

    pub fn pauli_y<T: Real>() -> DMatrix<Complex<T>> {
        let i = Complex::new(T::zero(), T::one());
        DMatrix::from_row_slice(2, 2, &[czero(), -i, i, czero()])
    }
}

/// The four two-qubit Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellState {
    PhiPlus,
    PsiPlus,
    PhiMinus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [Self::PhiPlus, Self::PsiPlus, Self::PhiMinus, Self::PsiMinus];

    pub fn name(self) -> &'static str {
        match self {
            Self::PhiPlus => "phi-plus",
            Self::PsiPlus => "psi-plus",
            Self::PhiMinus => "phi-minus",
            Self::PsiMinus => "psi-minus",
        }
    }
}

impl std::str::FromStr for BellState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown Bell state '{s}'")))
    }
}

pub fn bell_state<T: Real>(which: BellState) -> StateVector<T> {
    let (a, b, sign) = match which {
        BellState::PhiPlus => ([0, 0], [1, 1], T::one()),
        BellState::PhiMinus => ([0, 0], [1, 1], -T::one()),
        BellState::PsiPlus => ([0, 1], [1, 0], T::one()),
        BellState::PsiMinus => ([0, 1], [1, 0], -T::one()),
    };
    StateVector::from_entries(&[2, 2], [(a, cone()), (b, creal(sign))]).expect("Bell states are valid")
}

/// `(|0...0> + |1...1>) / sqrt(2)` on `n_parties` qubits.
pub fn ghz_state<T: Real>(n_parties: usize) -> Result<StateVector<T>> {
    if n_parties < 2 {
        return Err(Error::InvalidArgument(format!("GHZ needs at least 2 parties, got {n_parties}")));
    }
    let dims = vec![2; n_parties];
    StateVector::from_entries(&dims, [(vec![0; n_parties], cone()), (vec![1; n_parties], cone())])
}

/// `(|001> + |010> + |100>) / sqrt(3)`.
pub fn w_state<T: Real>() -> StateVector<T> {
    StateVector::from_entries(&[2, 2, 2], [([0, 0, 1], cone()), ([0, 1, 0], cone()), ([1, 0, 0], cone())])
        .expect("W state is valid")
}
