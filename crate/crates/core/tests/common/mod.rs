#![allow(dead_code)]

use entangle_core::sampling::GroupSpec;
use entangle_core::state::{LocalUnitary, StateVector};
use entangle_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_vector<R: Rng>(len: usize, rng: &mut R) -> Vec<Complex64> {
    (0..len).map(|_| gaussian_complex(rng)).collect()
}

pub fn random_state<R: Rng>(dims: &[usize], rng: &mut R) -> StateVector<f64> {
    let len = dims.iter().product();
    StateVector::from_amplitudes(dims, random_vector(len, rng)).unwrap()
}

pub fn random_product<R: Rng>(dims: &[usize], rng: &mut R) -> StateVector<f64> {
    let factors: Vec<Vec<Complex64>> = dims.iter().map(|&d| random_vector(d, rng)).collect();
    StateVector::product(&factors).unwrap()
}

pub fn random_su<R: Rng>(dims: &[usize], rng: &mut R) -> LocalUnitary<f64> {
    GroupSpec::special(dims).sample(rng).unwrap()
}

pub fn random_u<R: Rng>(dims: &[usize], rng: &mut R) -> LocalUnitary<f64> {
    GroupSpec::unitary(dims).sample(rng).unwrap()
}
