use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::Statevector;

/// A classical vector prepared for amplitude encoding.
///
/// The vector is zero-padded to the next power of two (at least 2) and
/// scaled by `c_norm = 1/‖x‖`, so basis state |i⟩ carries `c_norm · x[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EncodedInput {
    x: Vec<f64>,
    num_qubits: usize,
    c_norm: f64,
}

impl EncodedInput {
    pub fn new(x: &[f64]) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::EmptyInput);
        }
        let dim = x.len().next_power_of_two().max(2);
        let mut padded = x.to_vec();
        padded.resize(dim, 0.0);
        let norm_sqr: f64 = padded.iter().map(|v| v * v).sum();
        if !norm_sqr.is_finite() {
            return Err(Error::InvalidState(
                "input contains non-finite values".into(),
            ));
        }
        if norm_sqr == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(EncodedInput {
            x: padded,
            num_qubits: dim.trailing_zeros() as usize,
            c_norm: 1.0 / norm_sqr.sqrt(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dimension(&self) -> usize {
        self.x.len()
    }

    pub fn c_norm(&self) -> f64 {
        self.c_norm
    }

    /// The padded classical vector.
    pub fn raw(&self) -> &[f64] {
        &self.x
    }

    pub fn amplitudes(&self) -> Vec<Complex64> {
        self.x
            .iter()
            .map(|v| Complex64::new(v * self.c_norm, 0.0))
            .collect()
    }

    pub fn statevector(&self) -> Statevector {
        Statevector::from_amplitudes(self.amplitudes()).expect("normalized by construction")
    }
}

/// |Φ_x⟩ = C_norm Σ x_i |i⟩.
pub fn amplitude_encode(x: &[f64]) -> Result<Statevector> {
    Ok(EncodedInput::new(x)?.statevector())
}
