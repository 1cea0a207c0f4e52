//! JSON state files.
//!
//! ```json
//! {"dims": [2, 2], "amplitudes": [{"index": [0, 0], "re": 1.0, "im": 0.0}]}
//! ```
//!
//! Indices are 0-based and row-major as in [`StateVector`]; omitted entries
//! are zero. Reading normalizes and reports the norm found in the file.

use std::io::{Read, Write};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state::{multi_index, StateVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<AmplitudeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudeEntry {
    pub index: Vec<usize>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// A state read from disk together with its norm before normalization.
#[derive(Debug, Clone)]
pub struct LoadedState<T: Real> {
    pub state: StateVector<T>,
    pub input_norm: f64,
}

impl StateFile {
    /// Sparse file view of a state; exact zeros are omitted.
    pub fn from_state<T: Real>(state: &StateVector<T>) -> Self {
        let amplitudes = state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| !(a.re.is_zero() && a.im.is_zero()))
            .map(|(flat, a)| AmplitudeEntry {
                index: multi_index(state.dims(), flat),
                re: a.re.to_f64_lossy(),
                im: a.im.to_f64_lossy(),
            })
            .collect();
        Self { dims: state.dims().to_vec(), amplitudes }
    }

    pub fn to_state<T: Real>(&self) -> Result<LoadedState<T>> {
        let entries: Vec<(Vec<usize>, Complex<T>)> =
            self.amplitudes.iter().map(|e| (e.index.clone(), Complex::new(T::lit(e.re), T::lit(e.im)))).collect();
        let input_norm = self.amplitudes.iter().map(|e| e.re * e.re + e.im * e.im).sum::<f64>().sqrt();
        let state = StateVector::from_entries(&self.dims, entries)?;
        Ok(LoadedState { state, input_norm })
    }
}

pub fn parse_state<T: Real>(text: &str) -> Result<LoadedState<T>> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.to_state()
}

pub fn read_state<T: Real, R: Read>(reader: R) -> Result<LoadedState<T>> {
    let file: StateFile = serde_json::from_reader(reader).map_err(|e| Error::Format(e.to_string()))?;
    file.to_state()
}

pub fn write_state<T: Real, W: Write>(state: &StateVector<T>, writer: W) -> Result<()> {
    serde_json::to_writer_pretty(writer, &StateFile::from_state(state)).map_err(|e| Error::Format(e.to_string()))
}

pub fn state_to_json<T: Real>(state: &StateVector<T>) -> String {
    serde_json::to_string_pretty(&StateFile::from_state(state)).expect("state files always serialize")
}
