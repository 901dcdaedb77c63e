use rayon::prelude::*;

use super::{encode_dataset, shifted_configs, stream_tag, GradientMode, GradientReport, ShiftRule};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::sim::{run_shots, CircuitOp, CircuitProgram};
use crate::vqc::{
    build_vqc, cost_from_distribution, default_feature_map_depth, AnsatzConfig, EncodedInput,
};

/// Runs 2n+1 separate circuits (θ and every θ ± s·e_i) for `shots` shots per
/// input each, each with its own classical register.
pub fn conventional_gradients(
    dataset: &Dataset,
    config: &AnsatzConfig,
    rule: &ShiftRule,
    shots: u64,
    seed: u64,
) -> Result<GradientReport> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let encoded = encode_dataset(dataset, config)?;
    let configs = shifted_configs(config, rule);
    let m = encoded.len() as f64;

    let costs: Vec<f64> = configs
        .par_iter()
        .enumerate()
        .map(|(k, shifted)| {
            encoded
                .iter()
                .enumerate()
                .map(|(x, (input, label))| {
                    let vqc =
                        build_vqc(input, shifted, default_feature_map_depth(config.num_qubits))?;
                    let path = [stream_tag::CONVENTIONAL, x as u64, k as u64];
                    let records =
                        run_shots(&vqc.program, shots as usize, derive_seed(seed, &path))?;
                    let mut hist = vec![0.0; 1 << config.num_qubits];
                    let data_bits: Vec<usize> = (0..config.num_qubits).collect();
                    for r in &records {
                        hist[r.value(&data_bits)] += 1.0 / shots as f64;
                    }
                    Ok(cost_from_distribution(&hist, *label)? / m)
                })
                .sum::<Result<f64>>()
        })
        .collect::<Result<_>>()?;

    Ok(GradientReport {
        mode: GradientMode::Conventional,
        config: config.clone(),
        gradients: rule.gradients(&costs),
        unshifted_cost: costs[0],
        per_index_shots: None,
        shots_planned: shots * (configs.len() * encoded.len()) as u64,
        seed,
    })
}

/// The 2n+1 circuits for one input stacked in series on the same qubits:
/// each is re-initialized by RESET and measured into its own Q classical bits.
pub fn build_conventional_stack(
    input: &EncodedInput,
    config: &AnsatzConfig,
    rule: &ShiftRule,
    feature_map_depth: usize,
) -> Result<CircuitProgram> {
    let q = config.num_qubits;
    let configs = shifted_configs(config, rule);
    let mut stack = CircuitProgram::new(q, q * configs.len());
    for (k, shifted) in configs.iter().enumerate() {
        if k > 0 {
            for qubit in 0..q {
                stack.push(CircuitOp::Reset { qubit });
            }
        }
        let vqc = build_vqc(input, shifted, feature_map_depth)?;
        stack
            .ops
            .extend(vqc.program.ops.into_iter().map(|op| match op {
                CircuitOp::Measure { qubit, clbit } => CircuitOp::Measure {
                    qubit,
                    clbit: clbit + k * q,
                },
                other => other,
            }));
    }
    Ok(stack)
}
