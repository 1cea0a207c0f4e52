//! Schmidt decomposition across a bipartition, Schmidt rank, product-state
//! detection and the two-qubit determinant invariant.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Num;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{creal, czero, Real};
use crate::state::StateVector;

/// Default relative threshold for counting a singular value as nonzero.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// The parties on side A of a bipartition; the complement is side B.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cut {
    parties: Vec<usize>,
}

impl Cut {
    /// Sorts and deduplicates the given parties.
    pub fn new(parties: impl IntoIterator<Item = usize>) -> Self {
        let mut parties: Vec<usize> = parties.into_iter().collect();
        parties.sort_unstable();
        parties.dedup();
        Self { parties }
    }

    pub fn single(party: usize) -> Self {
        Self { parties: vec![party] }
    }

    pub fn parties(&self) -> &[usize] {
        &self.parties
    }

    /// Party order placing side A first, then the complement, each ascending.
    fn ordering(&self, n_parties: usize) -> Result<Vec<usize>> {
        if self.parties.is_empty() || self.parties.len() >= n_parties {
            return Err(Error::InvalidCut(format!(
                "{:?} must be a nonempty proper subset of {n_parties} parties",
                self.parties
            )));
        }
        if let Some(&p) = self.parties.iter().find(|&&p| p >= n_parties) {
            return Err(Error::InvalidCut(format!("party {p} out of range for {n_parties} parties")));
        }
        let rest = (0..n_parties).filter(|p| !self.parties.contains(p));
        Ok(self.parties.iter().copied().chain(rest).collect())
    }
}

/// `sum_k lambda_k |u_k>_A ⊗ |v_k>_B`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition<T: Real> {
    /// Schmidt coefficients above threshold, descending.
    pub lambdas: Vec<T>,
    pub rank: usize,
    pub left_basis: Vec<Vec<Complex<T>>>,
    pub right_basis: Vec<Vec<Complex<T>>>,
    pub tolerance_used: T,
    /// All singular values, including the ones dropped by the threshold.
    pub singular_values: Vec<T>,
    cut: Cut,
    dims: Vec<usize>,
}

impl<T: Real> SchmidtDecomposition<T> {
    pub fn cut(&self) -> &Cut {
        &self.cut
    }

    /// Rebuilds the state in its original party order from the kept terms.
    pub fn reconstruct(&self) -> Result<StateVector<T>> {
        let order = self.cut.ordering(self.dims.len())?;
        let left_len = self.left_basis.first().map_or(0, Vec::len);
        let right_len = self.right_basis.first().map_or(0, Vec::len);
        let mut amps = vec![czero(); left_len * right_len];
        for k in 0..self.rank {
            let lam = self.lambdas[k];
            for (i, u) in self.left_basis[k].iter().enumerate() {
                let ul = u.scale(lam);
                for (j, v) in self.right_basis[k].iter().enumerate() {
                    amps[i * right_len + j] += ul * v;
                }
            }
        }
        let permuted_dims: Vec<usize> = order.iter().map(|&p| self.dims[p]).collect();
        let mut inverse = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        StateVector::unnormalized(&permuted_dims, amps)?.permute_parties(&inverse)
    }
}

/// Coefficient matrix with side-A multi-indices as rows.
pub fn coefficient_matrix<T: Real>(state: &StateVector<T>, cut: &Cut) -> Result<DMatrix<Complex<T>>> {
    if state.n_parties() < 2 {
        return Err(Error::InvalidCut("a bipartition needs at least two parties".into()));
    }
    let order = cut.ordering(state.n_parties())?;
    let permuted = state.permute_parties(&order)?;
    let rows: usize = cut.parties.iter().map(|&p| state.dims()[p]).product();
    let cols = state.len() / rows;
    Ok(DMatrix::from_row_slice(rows, cols, permuted.amplitudes()))
}

pub fn schmidt_decompose<T: Real>(state: &StateVector<T>, cut: &Cut, tolerance: T) -> Result<SchmidtDecomposition<T>> {
    let m = coefficient_matrix(state, cut)?;
    let svd = m.svd(true, true);
    let u = svd.u.ok_or_else(|| Error::Numeric("SVD did not return left vectors".into()))?;
    let v_t = svd.v_t.ok_or_else(|| Error::Numeric("SVD did not return right vectors".into()))?;

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap_or(std::cmp::Ordering::Equal)
    });
    let singular_values: Vec<T> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let largest = singular_values.first().copied().unwrap_or_else(T::zero);
    if !largest.is_finite() {
        return Err(Error::Numeric("non-finite singular value".into()));
    }
    let threshold = tolerance * largest;
    let rank = singular_values.iter().take_while(|&&s| s > threshold).count();

    let kept = &order[..rank];
    Ok(SchmidtDecomposition {
        lambdas: singular_values[..rank].to_vec(),
        rank,
        left_basis: kept.iter().map(|&k| u.column(k).iter().copied().collect()).collect(),
        right_basis: kept.iter().map(|&k| v_t.row(k).iter().copied().collect()).collect(),
        tolerance_used: tolerance,
        singular_values,
        cut: cut.clone(),
        dims: state.dims().to_vec(),
    })
}

pub fn schmidt_rank<T: Real>(state: &StateVector<T>, cut: &Cut, tolerance: T) -> Result<usize> {
    Ok(schmidt_decompose(state, cut, tolerance)?.rank)
}

/// Schmidt rank at least two across `cut`.
pub fn is_entangled_bipartite<T: Real>(state: &StateVector<T>, cut: &Cut, tolerance: T) -> Result<bool> {
    Ok(schmidt_rank(state, cut, tolerance)? >= 2)
}

/// Schmidt ranks across every single-party cut `{k} | rest`.
pub fn single_party_ranks<T: Real>(state: &StateVector<T>, tolerance: T) -> Result<Vec<usize>> {
    (0..state.n_parties()).map(|p| schmidt_rank(state, &Cut::single(p), tolerance)).collect()
}

/// A pure state is a full product iff every single-party cut has rank one.
pub fn is_product_multipartite<T: Real>(state: &StateVector<T>, tolerance: T) -> Result<bool> {
    Ok(single_party_ranks(state, tolerance)?.iter().all(|&r| r == 1))
}

/// `c00 c11 - c01 c10` over any commutative ring.
pub fn det2<R: Num + Clone>(c00: R, c01: R, c10: R, c11: R) -> R {
    c00 * c11 - c01 * c10
}

fn two_qubit_amplitudes<T: Real>(state: &StateVector<T>) -> Result<[Complex<T>; 4]> {
    if state.dims() != [2, 2] {
        return Err(Error::DimensionMismatch { expected: vec![2, 2], found: state.dims().to_vec() });
    }
    let a = state.amplitudes();
    Ok([a[0], a[1], a[2], a[3]])
}

/// Determinant of the 2x2 coefficient matrix of a normalized two-qubit state.
/// Bell states give `±1/2`.
pub fn bipartite_determinant<T: Real>(state: &StateVector<T>) -> Result<Complex<T>> {
    let [c00, c01, c10, c11] = two_qubit_amplitudes(state)?;
    Ok(det2(c00, c01, c10, c11))
}

pub fn det_squared<T: Real>(state: &StateVector<T>) -> Result<Complex<T>> {
    let d = bipartite_determinant(state)?;
    Ok(d * d)
}

/// `2 det`, which scores the Bell states as `±1` (the concurrence scaling).
pub fn scaled_determinant<T: Real>(state: &StateVector<T>) -> Result<Complex<T>> {
    Ok(bipartite_determinant(state)? * creal(T::lit(2.0)))
}
