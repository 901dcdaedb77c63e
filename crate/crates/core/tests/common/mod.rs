#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use onecircuit::data::{generate_random_dataset, Dataset};
use onecircuit::grad::ImprovedCircuitSpec;
use onecircuit::rng::seeded;
use onecircuit::sim::Statevector;
use onecircuit::vqc::{num_params, AnsatzConfig};
use rand::Rng;

/// Random data of dimension 2^q and θ uniform in [0, 2π).
pub fn random_problem(q: usize, reps: usize, m: usize, seed: u64) -> (Dataset, AnsatzConfig) {
    let dataset = generate_random_dataset(m, 1 << q, seed).unwrap();
    let mut rng = seeded(seed, &[0x7e57]);
    let theta = (0..num_params(q, reps))
        .map(|_| rng.random_range(0.0..2.0 * PI))
        .collect();
    (dataset, AnsatzConfig::new(q, reps, theta).unwrap())
}

pub fn fired_blocks(bits: &BTreeMap<usize, bool>, spec: &ImprovedCircuitSpec) -> Vec<usize> {
    spec.block_clbits
        .iter()
        .enumerate()
        .filter(|(_, c)| bits.get(c).copied().unwrap_or(false))
        .map(|(b, _)| b)
        .collect()
}

/// Data-register amplitudes of a state whose remaining qubits sit in a single
/// basis state.
pub fn data_amplitudes(state: &Statevector, data_qubits: usize) -> Vec<Complex64> {
    let dim = 1 << data_qubits;
    let amps = state.amplitudes();
    let block = amps
        .chunks(dim)
        .max_by(|a, b| norm(a).total_cmp(&norm(b)))
        .unwrap();
    assert!(
        (norm(block) - 1.0).abs() < 1e-10,
        "ancillas are not in a basis state"
    );
    block.to_vec()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

pub fn max_amplitude_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
