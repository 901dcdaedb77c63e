use std::collections::BTreeMap;

use super::circuit::{CircuitOp, CircuitProgram};
use super::execute::{apply_op, PRUNE_PROBABILITY};
use super::statevector::Statevector;
use crate::error::{Error, Result};
use crate::rng::ShotStreams;
use rand_chacha::ChaCha8Rng;

/// One measurement-outcome history with its exact probability and
/// normalized conditional state.
#[derive(Clone, Debug)]
pub struct Branch {
    /// Recorded mid-circuit outcomes keyed by classical bit.
    pub outcome_bits: BTreeMap<usize, bool>,
    pub probability: f64,
    pub final_state: Statevector,
}

#[derive(Clone, Debug)]
pub struct BranchOptions {
    pub max_branches: usize,
    pub prune_below: f64,
}

impl Default for BranchOptions {
    fn default() -> Self {
        BranchOptions {
            max_branches: 1 << 16,
            prune_below: PRUNE_PROBABILITY,
        }
    }
}

struct Partial {
    state: Statevector,
    clbits: Vec<bool>,
    recorded: BTreeMap<usize, bool>,
    probability: f64,
}

/// Exact expansion of `program` over every measurement, reset and classical
/// draw outcome. Terminal measurements (see
/// [`CircuitProgram::terminal_measurements`]) are not expanded; their
/// statistics stay in each branch's `final_state`.
pub fn enumerate_branches(program: &CircuitProgram) -> Result<Vec<Branch>> {
    enumerate_branches_with(program, &BranchOptions::default())
}

pub fn enumerate_branches_with(
    program: &CircuitProgram,
    options: &BranchOptions,
) -> Result<Vec<Branch>> {
    program.validate()?;
    let terminal = program.terminal_measurements();
    let mut live = vec![Partial {
        state: Statevector::zero(program.num_qubits),
        clbits: vec![false; program.num_clbits],
        recorded: BTreeMap::new(),
        probability: 1.0,
    }];
    let mut no_rng = ShotStreams::new(0).shot(0);

    for (op, is_terminal) in program.ops.iter().zip(terminal) {
        if is_terminal {
            continue;
        }
        let mut next = Vec::with_capacity(live.len());
        for branch in live {
            expand(branch, op, options, &mut next, &mut no_rng)?;
            if next.len() > options.max_branches {
                return Err(Error::BranchExplosion(options.max_branches));
            }
        }
        live = next;
    }

    Ok(live
        .into_iter()
        .map(|b| Branch {
            outcome_bits: b.recorded,
            probability: b.probability,
            final_state: b.state,
        })
        .collect())
}

fn expand(
    mut branch: Partial,
    op: &CircuitOp,
    options: &BranchOptions,
    out: &mut Vec<Partial>,
    no_rng: &mut ChaCha8Rng,
) -> Result<()> {
    match op {
        CircuitOp::Measure { qubit, clbit } => {
            for (outcome, child) in split(&branch, *qubit, options) {
                let mut child = child;
                child.clbits[*clbit] = outcome;
                child.recorded.insert(*clbit, outcome);
                out.push(child);
            }
        }
        CircuitOp::Reset { qubit } => {
            for (outcome, mut child) in split(&branch, *qubit, options) {
                if outcome {
                    child.state.apply_x(*qubit);
                }
                out.push(child);
            }
        }
        CircuitOp::ClassicalIf { clbit, op: inner } => {
            if branch.clbits[*clbit] {
                expand(branch, inner, options, out, no_rng)?;
            } else {
                out.push(branch);
            }
        }
        CircuitOp::ClassicalDraw { clbits } => {
            let p = 1.0 / (clbits.len() + 1) as f64;
            for pick in 0..=clbits.len() {
                let mut child = Partial {
                    state: branch.state.clone(),
                    clbits: branch.clbits.clone(),
                    recorded: branch.recorded.clone(),
                    probability: branch.probability * p,
                };
                for (k, &b) in clbits.iter().enumerate() {
                    child.clbits[b] = k == pick;
                    child.recorded.insert(b, k == pick);
                }
                out.push(child);
            }
        }
        _ => {
            apply_op(&mut branch.state, op, &mut branch.clbits, no_rng)?;
            out.push(branch);
        }
    }
    Ok(())
}

fn split(branch: &Partial, qubit: usize, options: &BranchOptions) -> Vec<(bool, Partial)> {
    let p1 = branch.state.prob_one(qubit);
    let p0 = branch.state.norm_sqr() - p1;
    [(false, p0), (true, p1)]
        .into_iter()
        .filter(|&(_, p)| p >= options.prune_below)
        .map(|(outcome, p)| {
            let mut state = branch.state.clone();
            state.collapse(qubit, outcome, p);
            (
                outcome,
                Partial {
                    state,
                    clbits: branch.clbits.clone(),
                    recorded: branch.recorded.clone(),
                    probability: branch.probability * p,
                },
            )
        })
        .collect()
}

/// Exact Born distribution over `qubits` for a program whose only
/// measurements are terminal. Outcome bit `j` is `qubits[j]`.
pub fn exact_distribution(program: &CircuitProgram, qubits: &[usize]) -> Result<Vec<f64>> {
    program.validate()?;
    for &q in qubits {
        if q >= program.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                num_qubits: program.num_qubits,
            });
        }
    }
    let terminal = program.terminal_measurements();
    let mut state = Statevector::zero(program.num_qubits);
    let mut clbits = vec![false; program.num_clbits];
    let mut no_rng = ShotStreams::new(0).shot(0);
    for (op, is_terminal) in program.ops.iter().zip(terminal) {
        if is_terminal {
            continue;
        }
        if !op.is_deterministic() {
            return Err(Error::MidCircuitMeasurement);
        }
        apply_op(&mut state, op, &mut clbits, &mut no_rng)?;
    }
    Ok(state.marginal(qubits))
}
