//! The variational circuit: amplitude-encoded input, RealAmplitudes ansatz,
//! terminal measurement of every data qubit.

mod ansatz;
mod cost;
mod encoding;

use std::sync::Arc;

pub use ansatz::{build_ansatz, num_params, Ansatz, AnsatzConfig, Entanglement};
pub use cost::cost_from_distribution;
pub use encoding::{amplitude_encode, EncodedInput};

use crate::error::{Error, Result};
use crate::sim::{exact_distribution, CircuitOp, CircuitProgram, Mat2};

/// Generic state-preparation depth bound used when none is given.
pub fn default_feature_map_depth(num_qubits: usize) -> usize {
    (1usize << num_qubits) - 1
}

/// A built VQC together with where each parameter's gate sits in `program.ops`.
#[derive(Clone, Debug, PartialEq)]
pub struct VqcCircuit {
    pub program: CircuitProgram,
    pub param_ops: Vec<usize>,
    pub num_data_qubits: usize,
}

impl VqcCircuit {
    /// Replaces parameter `i`'s RY with a fixed single-qubit unitary.
    pub fn with_param_gate(mut self, i: usize, matrix: Mat2) -> Self {
        let pos = self.param_ops[i];
        let qubit = match &self.program.ops[pos] {
            CircuitOp::Ry { qubit, .. } | CircuitOp::Unitary { qubit, .. } => *qubit,
            other => panic!("parameter {i} does not address a single-qubit gate: {other:?}"),
        };
        self.program.ops[pos] = CircuitOp::Unitary { qubit, matrix };
        self
    }

    /// Exact outcome distribution over the data qubits.
    pub fn data_distribution(&self) -> Result<Vec<f64>> {
        let qubits: Vec<usize> = (0..self.num_data_qubits).collect();
        exact_distribution(&self.program, &qubits)
    }
}

fn state_prep(input: &EncodedInput, depth: usize) -> CircuitOp {
    CircuitOp::StatePrep {
        qubits: (0..input.num_qubits()).collect(),
        amplitudes: Arc::from(input.amplitudes()),
        depth,
    }
}

pub(crate) fn check_dimensions(input: &EncodedInput, config: &AnsatzConfig) -> Result<()> {
    config.validate()?;
    if input.num_qubits() != config.num_qubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << config.num_qubits,
            found: input.dimension(),
            num_qubits: config.num_qubits,
        });
    }
    Ok(())
}

/// Feature map, ansatz, then MEASURE of data qubit k into classical bit k.
pub fn build_vqc(
    input: &EncodedInput,
    config: &AnsatzConfig,
    feature_map_depth: usize,
) -> Result<VqcCircuit> {
    check_dimensions(input, config)?;
    let q = config.num_qubits;
    let mut program = CircuitProgram::new(q, q);
    program.push(state_prep(input, feature_map_depth));
    let ansatz = build_ansatz(config);
    let offset = program.len();
    program.ops.extend(ansatz.ops);
    for k in 0..q {
        program.push(CircuitOp::Measure { qubit: k, clbit: k });
    }
    Ok(VqcCircuit {
        program,
        param_ops: ansatz.param_ops.iter().map(|p| p + offset).collect(),
        num_data_qubits: q,
    })
}

pub fn build_base_vqc(input: &EncodedInput, config: &AnsatzConfig) -> Result<CircuitProgram> {
    Ok(build_vqc(input, config, default_feature_map_depth(config.num_qubits))?.program)
}

/// Exact per-input cost 2(1 − a_y) of the plain circuit.
pub fn exact_cost(input: &EncodedInput, label: usize, config: &AnsatzConfig) -> Result<f64> {
    let vqc = build_vqc(input, config, 0)?;
    cost_from_distribution(&vqc.data_distribution()?, label)
}

pub(crate) fn feature_map_op(input: &EncodedInput, depth: usize) -> CircuitOp {
    state_prep(input, depth)
}
