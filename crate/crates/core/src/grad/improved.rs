//! One circuit that evaluates every shifted cost function.
//!
//! Two ancillas are added to the data register. The activation qubit starts
//! in |1⟩ and drops to |0⟩ once any block has fired; the dice qubit is
//! rotated, measured and reset inside every block. Block j (0-based, in circuit
//! order) fires with conditional probability 1/(N − j), which makes each of
//! the 2n blocks, and the no-fire outcome, equally likely at 1/N.

use rayon::prelude::*;

use super::{encode_dataset, stream_tag, GradientMode, GradientReport, ShiftRule, ShotPlan};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::derive_seed;
use crate::sim::{run_shots, CircuitOp, CircuitProgram, ShotRecord};
use crate::vqc::{
    build_ansatz, cost_from_distribution, default_feature_map_depth, feature_map_op, AnsatzConfig,
    EncodedInput,
};

/// Rotation of the dice qubit in block `j` of `num_cost_functions` = N.
pub fn gamma(j: usize, num_cost_functions: usize) -> f64 {
    2.0 * (1.0 / (num_cost_functions - j) as f64).sqrt().asin()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftSign {
    Plus,
    Minus,
}

impl ShiftSign {
    pub fn apply(self, shift: f64) -> f64 {
        match self {
            ShiftSign::Plus => shift,
            ShiftSign::Minus => -shift,
        }
    }
}

/// Which parameter a block shifts, and in which direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockTarget {
    pub param: usize,
    pub sign: ShiftSign,
}

impl BlockTarget {
    pub fn for_block(block: usize) -> Self {
        let sign = if block.is_multiple_of(2) {
            ShiftSign::Plus
        } else {
            ShiftSign::Minus
        };
        BlockTarget {
            param: block / 2,
            sign,
        }
    }

    pub fn cost_index(&self) -> usize {
        match self.sign {
            ShiftSign::Plus => 2 * self.param + 1,
            ShiftSign::Minus => 2 * self.param + 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ancillas {
    /// |1⟩ until some block fires.
    pub activation: usize,
    /// Rotated, measured and reset in every block.
    pub dice: usize,
}

/// Layout of a single-circuit gradient program.
#[derive(Clone, Debug, PartialEq)]
pub struct ImprovedCircuitSpec {
    pub num_data_qubits: usize,
    pub num_params: usize,
    /// `None` for the classical-control variant.
    pub ancillas: Option<Ancillas>,
    /// N = 2n + 1.
    pub num_cost_functions: usize,
    pub shift: f64,
    /// γ_j for j = 0..N−2; empty when blocks are selected classically.
    pub gammas: Vec<f64>,
    pub block_map: Vec<BlockTarget>,
    /// Classical bit recording whether block b fired.
    pub block_clbits: Vec<usize>,
    pub data_clbits: Vec<usize>,
    /// Terminal readout of the activation and dice qubits.
    pub ancilla_clbits: Vec<usize>,
    /// Op index of each parameter's gate.
    pub param_ops: Vec<usize>,
    /// Op index of each block's first op.
    pub block_ops: Vec<usize>,
}

impl ImprovedCircuitSpec {
    pub fn num_blocks(&self) -> usize {
        self.block_map.len()
    }

    pub fn num_clbits(&self) -> usize {
        self.data_clbits.len() + self.block_clbits.len() + self.ancilla_clbits.len()
    }

    /// Ops added purely to carry the ancillas: the |1⟩ preparation and the
    /// two terminal ancilla readouts.
    pub fn ancilla_bookkeeping_ops(&self) -> usize {
        if self.ancillas.is_some() {
            1 + self.ancilla_clbits.len()
        } else {
            0
        }
    }
}

pub fn build_improved_circuit(
    input: &EncodedInput,
    config: &AnsatzConfig,
    rule: &ShiftRule,
) -> Result<(CircuitProgram, ImprovedCircuitSpec)> {
    build_improved_circuit_with_depth(
        input,
        config,
        rule,
        default_feature_map_depth(config.num_qubits),
    )
}

/// Base circuit with two five-op blocks after every parameterized RY:
/// CRY(γ_j) activation→dice, MEASURE dice, CRY(±s) dice→data, CX dice→activation,
/// RESET dice.
pub fn build_improved_circuit_with_depth(
    input: &EncodedInput,
    config: &AnsatzConfig,
    rule: &ShiftRule,
    feature_map_depth: usize,
) -> Result<(CircuitProgram, ImprovedCircuitSpec)> {
    crate::vqc::check_dimensions(input, config)?;
    let q = config.num_qubits;
    let n = config.num_params();
    let big_n = 2 * n + 1;
    let ancillas = Ancillas {
        activation: q,
        dice: q + 1,
    };
    let block_clbits: Vec<usize> = (q..q + 2 * n).collect();

    let mut program = CircuitProgram::new(q + 2, q + 2 * n + 2);
    program.push(feature_map_op(input, feature_map_depth));
    program.push(CircuitOp::X {
        qubit: ancillas.activation,
    });

    let ansatz = build_ansatz(config);
    let mut param_ops = vec![0; n];
    let mut block_ops = Vec::with_capacity(2 * n);
    let mut block_map = Vec::with_capacity(2 * n);
    let mut params = ansatz.param_ops.iter().enumerate().peekable();
    for (pos, op) in ansatz.ops.into_iter().enumerate() {
        program.push(op);
        let Some((param, _)) = params.next_if(|&(_, &p)| p == pos) else {
            continue;
        };
        param_ops[param] = program.len() - 1;
        for sign in [ShiftSign::Plus, ShiftSign::Minus] {
            let block = block_map.len();
            let target = BlockTarget { param, sign };
            debug_assert_eq!(target, BlockTarget::for_block(block));
            block_ops.push(program.len());
            block_map.push(target);
            program
                .push(CircuitOp::Cry {
                    control: ancillas.activation,
                    target: ancillas.dice,
                    angle: gamma(block, big_n),
                })
                .push(CircuitOp::Measure {
                    qubit: ancillas.dice,
                    clbit: block_clbits[block],
                })
                .push(CircuitOp::Cry {
                    control: ancillas.dice,
                    target: config.param_qubit(param),
                    angle: sign.apply(rule.shift),
                })
                .push(CircuitOp::Cx {
                    control: ancillas.dice,
                    target: ancillas.activation,
                })
                .push(CircuitOp::Reset {
                    qubit: ancillas.dice,
                });
        }
    }

    for k in 0..q {
        program.push(CircuitOp::Measure { qubit: k, clbit: k });
    }
    let ancilla_clbits = vec![q + 2 * n, q + 2 * n + 1];
    program.push(CircuitOp::Measure {
        qubit: ancillas.activation,
        clbit: ancilla_clbits[0],
    });
    program.push(CircuitOp::Measure {
        qubit: ancillas.dice,
        clbit: ancilla_clbits[1],
    });

    let spec = ImprovedCircuitSpec {
        num_data_qubits: q,
        num_params: n,
        ancillas: Some(ancillas),
        num_cost_functions: big_n,
        shift: rule.shift,
        gammas: (0..2 * n).map(|j| gamma(j, big_n)).collect(),
        block_map,
        block_clbits,
        data_clbits: (0..q).collect(),
        ancilla_clbits,
        param_ops,
        block_ops,
    };
    Ok((program, spec))
}

/// Cost index of one shot and the data-register outcome it carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecodedShot {
    pub index: usize,
    pub data_outcome: usize,
}

/// Reads which block (if any) fired in this shot.
pub fn decode_shot(record: &ShotRecord, spec: &ImprovedCircuitSpec) -> Result<DecodedShot> {
    if record.clbits.len() != spec.num_clbits() {
        return Err(Error::RecordLength {
            expected: spec.num_clbits(),
            found: record.clbits.len(),
        });
    }
    let fired: Vec<usize> = spec
        .block_clbits
        .iter()
        .enumerate()
        .filter(|(_, &c)| record.bit(c))
        .map(|(b, _)| b)
        .collect();
    let index = match fired.as_slice() {
        [] => 0,
        [b] => spec.block_map[*b].cost_index(),
        _ => {
            return Err(Error::MultipleActivations {
                count: fired.len(),
                blocks: fired,
            })
        }
    };
    Ok(DecodedShot {
        index,
        data_outcome: record.value(&spec.data_clbits),
    })
}

/// Per-index outcome histograms from one circuit's shots.
pub(crate) struct Buckets {
    pub counts: Vec<u64>,
    histograms: Vec<Vec<u64>>,
}

impl Buckets {
    pub fn collect(records: &[ShotRecord], spec: &ImprovedCircuitSpec) -> Result<Self> {
        let outcomes = 1usize << spec.num_data_qubits;
        let mut counts = vec![0u64; spec.num_cost_functions];
        let mut histograms = vec![vec![0u64; outcomes]; spec.num_cost_functions];
        for record in records {
            let shot = decode_shot(record, spec)?;
            counts[shot.index] += 1;
            histograms[shot.index][shot.data_outcome] += 1;
        }
        Ok(Buckets { counts, histograms })
    }

    /// Cost estimate for every index from its empirical outcome distribution.
    pub fn costs(&self, label: usize) -> Result<Vec<f64>> {
        self.histograms
            .iter()
            .zip(&self.counts)
            .enumerate()
            .map(|(k, (hist, &count))| {
                if count == 0 {
                    return Err(Error::InsufficientShots(k));
                }
                let a: Vec<f64> = hist.iter().map(|&h| h as f64 / count as f64).collect();
                cost_from_distribution(&a, label)
            })
            .collect()
    }
}

/// Gradient report plus the per-input shot histogram behind it.
#[derive(Clone, Debug)]
pub struct ImprovedRun {
    pub report: GradientReport,
    /// `per_input_counts[x][k]`: shots of input x that landed on index k.
    pub per_input_counts: Vec<Vec<u64>>,
    /// Estimated cost per index, averaged over inputs.
    pub costs: Vec<f64>,
}

impl ImprovedRun {
    /// Per-component tolerance from the smallest bucket feeding it.
    pub fn tolerances(&self) -> Vec<f64> {
        (0..self.report.gradients.len())
            .map(|i| {
                let fewest = self
                    .per_input_counts
                    .iter()
                    .flat_map(|c| [c[2 * i + 1], c[2 * i + 2]])
                    .min()
                    .unwrap_or(0);
                super::statistical_tolerance(fewest)
            })
            .collect()
    }
}

pub(crate) fn single_circuit_run<B>(
    dataset: &Dataset,
    config: &AnsatzConfig,
    rule: &ShiftRule,
    plan: &ShotPlan,
    seed: u64,
    mode: GradientMode,
    build: B,
) -> Result<ImprovedRun>
where
    B: Fn(&EncodedInput) -> Result<(CircuitProgram, ImprovedCircuitSpec)> + Sync,
{
    if plan.num_params != config.num_params() {
        return Err(Error::PlanMismatch {
            plan: plan.num_params,
            ansatz: config.num_params(),
        });
    }
    let encoded = encode_dataset(dataset, config)?;
    let tag = match mode {
        GradientMode::ClassicalCtrl => stream_tag::CLASSICAL,
        _ => stream_tag::IMPROVED,
    };
    let per_input: Vec<(Vec<u64>, Vec<f64>)> = encoded
        .par_iter()
        .enumerate()
        .map(|(x, (input, label))| {
            let (program, spec) = build(input)?;
            let records = run_shots(
                &program,
                plan.total as usize,
                derive_seed(seed, &[tag, x as u64]),
            )?;
            let buckets = Buckets::collect(&records, &spec)?;
            let costs = buckets.costs(*label)?;
            Ok((buckets.counts, costs))
        })
        .collect::<Result<_>>()?;

    let big_n = plan.num_cost_functions();
    let m = per_input.len() as f64;
    let mut costs = vec![0.0; big_n];
    let mut totals = vec![0u64; big_n];
    for (counts, c) in &per_input {
        for k in 0..big_n {
            costs[k] += c[k] / m;
            totals[k] += counts[k];
        }
    }
    let report = GradientReport {
        mode,
        config: config.clone(),
        gradients: rule.gradients(&costs),
        unshifted_cost: costs[0],
        per_index_shots: Some(totals),
        shots_planned: plan.total * per_input.len() as u64,
        seed,
    };
    Ok(ImprovedRun {
        report,
        per_input_counts: per_input.into_iter().map(|(c, _)| c).collect(),
        costs,
    })
}

/// Runs the single gradient circuit `plan.total` times per input and buckets
/// shots by the block that fired.
pub fn improved_run(
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
        GradientMode::Improved,
        |input| build_improved_circuit(input, config, rule),
    )
}

pub fn improved_gradients(
    dataset: &Dataset,
    config: &AnsatzConfig,
    rule: &ShiftRule,
    plan: &ShotPlan,
    seed: u64,
) -> Result<GradientReport> {
    Ok(improved_run(dataset, config, rule, plan, seed)?.report)
}
