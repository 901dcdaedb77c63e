//! All n parameter-shift gradients, computed three ways: the conventional
//! 2n+1 separate circuits, one circuit with probabilistic shift blocks, and an
//! exact infinite-shot oracle.
//!
//! Cost index convention shared by every estimator: index 0 is the unshifted
//! cost f(θ), index 2i+1 is f(θ + s·e_i) and index 2i+2 is f(θ − s·e_i).

mod classical;
mod conventional;
mod exact;
mod general;
mod improved;
mod oracle;

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

pub use classical::{
    build_classical_control_circuit, classical_control_run, classical_control_variant,
};
pub use conventional::{build_conventional_stack, conventional_gradients};
pub use exact::{dataset_cost, exact_costs, exact_gradients};
pub use general::{general_shift_insertion, GeneralShiftGates};
pub use improved::{
    build_improved_circuit, build_improved_circuit_with_depth, decode_shot, gamma,
    improved_gradients, improved_run, Ancillas, BlockTarget, DecodedShot, ImprovedCircuitSpec,
    ImprovedRun, ShiftSign,
};
pub use oracle::{branch_oracle_check, check_branches, BranchOracleReport, ORACLE_TOLERANCE};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::vqc::{AnsatzConfig, EncodedInput};

/// f'(θ_i) = multiplier · (f(θ + shift·e_i) − f(θ − shift·e_i)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftRule {
    pub multiplier: f64,
    pub shift: f64,
}

impl Default for ShiftRule {
    fn default() -> Self {
        ShiftRule {
            multiplier: 0.5,
            shift: FRAC_PI_2,
        }
    }
}

impl ShiftRule {
    pub fn gradients(&self, costs: &[f64]) -> Vec<f64> {
        let n = (costs.len() - 1) / 2;
        (0..n)
            .map(|i| self.multiplier * (costs[2 * i + 1] - costs[2 * i + 2]))
            .collect()
    }
}

/// Shot budget for the single-circuit estimators: `per_cost` shots per cost
/// function on average, `total = per_cost · (2n + 1)` per circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShotPlan {
    pub per_cost: u64,
    pub num_params: usize,
    pub total: u64,
}

impl ShotPlan {
    pub fn new(per_cost: u64, num_params: usize) -> Result<Self> {
        if per_cost == 0 {
            return Err(Error::ZeroShots);
        }
        Ok(ShotPlan {
            per_cost,
            num_params,
            total: per_cost * (2 * num_params as u64 + 1),
        })
    }

    pub fn num_cost_functions(&self) -> usize {
        2 * self.num_params + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradientMode {
    Conventional,
    Improved,
    ClassicalCtrl,
    Exact,
}

impl std::fmt::Display for GradientMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GradientMode::Conventional => "conventional",
            GradientMode::Improved => "improved",
            GradientMode::ClassicalCtrl => "classical-ctrl",
            GradientMode::Exact => "exact",
        })
    }
}

/// Outcome of one gradient computation.
///
/// `shots_planned` counts every shot across all inputs and circuits. For the
/// single-circuit modes `per_index_shots[k]` is the number of shots (summed
/// over inputs) that landed on cost index k, so it sums to `shots_planned`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradientReport {
    pub mode: GradientMode,
    pub config: AnsatzConfig,
    pub gradients: Vec<f64>,
    pub unshifted_cost: f64,
    pub per_index_shots: Option<Vec<u64>>,
    pub shots_planned: u64,
    pub seed: u64,
}

/// 5·√2/√shots: five times the bound on the standard deviation of a
/// difference of two cost estimates, each with per-shot variance ≤ 1.
pub fn statistical_tolerance(shots: u64) -> f64 {
    5.0 * 2f64.sqrt() / (shots as f64).sqrt()
}

/// Seed-path tags separating the random streams of each estimator.
pub(crate) mod stream_tag {
    pub const CONVENTIONAL: u64 = 1;
    pub const IMPROVED: u64 = 2;
    pub const CLASSICAL: u64 = 3;
}

pub(crate) fn encode_dataset(
    dataset: &Dataset,
    config: &AnsatzConfig,
) -> Result<Vec<(EncodedInput, usize)>> {
    config.validate()?;
    if dataset.inputs.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let outcomes = 1usize << config.num_qubits;
    dataset
        .inputs
        .iter()
        .zip(&dataset.labels)
        .map(|(x, &label)| {
            if label >= outcomes {
                return Err(Error::LabelOutOfRange {
                    label,
                    num_outcomes: outcomes,
                });
            }
            let input = EncodedInput::new(x)?;
            if input.num_qubits() != config.num_qubits {
                return Err(Error::DimensionMismatch {
                    expected: outcomes,
                    found: input.dimension(),
                    num_qubits: config.num_qubits,
                });
            }
            Ok((input, label))
        })
        .collect()
}

/// θ, then θ ± s·e_i in cost-index order.
pub(crate) fn shifted_configs(config: &AnsatzConfig, rule: &ShiftRule) -> Vec<AnsatzConfig> {
    let mut out = vec![config.clone()];
    for i in 0..config.num_params() {
        out.push(config.shifted(i, rule.shift));
        out.push(config.shifted(i, -rule.shift));
    }
    out
}
