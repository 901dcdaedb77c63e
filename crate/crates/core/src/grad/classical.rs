//! Variant that picks the cost index with a classical random draw and applies
//! the ±s shifts through classically controlled RY gates. No ancilla qubits.

use super::improved::single_circuit_run;
use super::{
    BlockTarget, GradientMode, GradientReport, ImprovedCircuitSpec, ImprovedRun, ShiftRule,
    ShotPlan,
};
use crate::data::Dataset;
use crate::error::Result;
use crate::sim::{CircuitOp, CircuitProgram};
use crate::vqc::{
    build_ansatz, default_feature_map_depth, feature_map_op, AnsatzConfig, EncodedInput,
};

pub fn build_classical_control_circuit(
    input: &EncodedInput,
    config: &AnsatzConfig,
    rule: &ShiftRule,
) -> Result<(CircuitProgram, ImprovedCircuitSpec)> {
    crate::vqc::check_dimensions(input, config)?;
    let q = config.num_qubits;
    let n = config.num_params();
    let block_clbits: Vec<usize> = (q..q + 2 * n).collect();
    let block_map: Vec<BlockTarget> = (0..2 * n).map(BlockTarget::for_block).collect();

    let mut program = CircuitProgram::new(q, q + 2 * n);
    program.push(feature_map_op(input, default_feature_map_depth(q)));
    program.push(CircuitOp::ClassicalDraw {
        clbits: block_clbits.clone(),
    });

    let ansatz = build_ansatz(config);
    let mut param_ops = Vec::with_capacity(n);
    let mut block_ops = Vec::with_capacity(2 * n);
    for (pos, op) in ansatz.ops.into_iter().enumerate() {
        program.push(op);
        let Some(param) = ansatz.param_ops.iter().position(|&p| p == pos) else {
            continue;
        };
        param_ops.push(program.len() - 1);
        for block in [2 * param, 2 * param + 1] {
            block_ops.push(program.len());
            program.push(CircuitOp::ClassicalIf {
                clbit: block_clbits[block],
                op: Box::new(CircuitOp::Ry {
                    qubit: config.param_qubit(param),
                    angle: block_map[block].sign.apply(rule.shift),
                }),
            });
        }
    }
    for k in 0..q {
        program.push(CircuitOp::Measure { qubit: k, clbit: k });
    }

    let spec = ImprovedCircuitSpec {
        num_data_qubits: q,
        num_params: n,
        ancillas: None,
        num_cost_functions: 2 * n + 1,
        shift: rule.shift,
        gammas: Vec::new(),
        block_map,
        block_clbits,
        data_clbits: (0..q).collect(),
        ancilla_clbits: Vec::new(),
        param_ops,
        block_ops,
    };
    Ok((program, spec))
}

pub fn classical_control_run(
    dataset: &Dataset,
    config: &AnsatzConfig,
    rule: &ShiftRule,
    plan: &ShotPlan,
    seed: u64,
) -> Result<ImprovedRun> {
    single_circuit_run(
        dataset,
        config,
        rule,
        plan,
        seed,
        GradientMode::ClassicalCtrl,
        |input| build_classical_control_circuit(input, config, rule),
    )
}

pub fn classical_control_variant(
    dataset: &Dataset,
    config: &AnsatzConfig,
    rule: &ShiftRule,
    plan: &ShotPlan,
    seed: u64,
) -> Result<GradientReport> {
    Ok(classical_control_run(dataset, config, rule, plan, seed)?.report)
}
