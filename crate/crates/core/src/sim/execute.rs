use rand::Rng;
use rayon::prelude::*;

use super::circuit::{CircuitOp, CircuitProgram};
use super::statevector::Statevector;
use crate::error::{Error, Result};
use crate::rng::ShotStreams;

/// Outcomes below this probability are treated as impossible.
pub const PRUNE_PROBABILITY: f64 = 1e-14;

/// Classical register contents at the end of one shot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShotRecord {
    pub clbits: Vec<bool>,
}

impl ShotRecord {
    pub fn bit(&self, index: usize) -> bool {
        self.clbits[index]
    }

    /// Packs the listed bits into an integer, `bits[0]` least significant.
    pub fn value(&self, bits: &[usize]) -> usize {
        bits.iter()
            .enumerate()
            .fold(0, |acc, (j, &b)| acc | (self.clbits[b] as usize) << j)
    }
}

/// Applies one op to `state`, reading and writing `clbits`.
///
/// Measurements sample the Born rule from `rng`. An outcome whose probability
/// is below [`PRUNE_PROBABILITY`] is never selected.
pub fn apply_op<R: Rng + ?Sized>(
    state: &mut Statevector,
    op: &CircuitOp,
    clbits: &mut [bool],
    rng: &mut R,
) -> Result<()> {
    match op {
        CircuitOp::Ry { qubit, angle } => state.apply_ry(*qubit, *angle),
        CircuitOp::Cry {
            control,
            target,
            angle,
        } => state.apply_controlled_ry(*control, *target, *angle),
        CircuitOp::Cx { control, target } => state.apply_cx(*control, *target),
        CircuitOp::X { qubit } => state.apply_x(*qubit),
        CircuitOp::Unitary { qubit, matrix } => state.apply_matrix(*qubit, matrix),
        CircuitOp::ControlledUnitary {
            control,
            target,
            matrix,
        } => state.apply_controlled_matrix(*control, *target, matrix),
        CircuitOp::Measure { qubit, clbit } => {
            clbits[*clbit] = measure(state, *qubit, rng)?;
        }
        CircuitOp::Reset { qubit } => {
            if measure(state, *qubit, rng)? {
                state.apply_x(*qubit);
            }
        }
        CircuitOp::ClassicalIf { clbit, op } => {
            if clbits[*clbit] {
                apply_op(state, op, clbits, rng)?;
            }
        }
        CircuitOp::ClassicalDraw { clbits: targets } => {
            let pick = rng.random_range(0..=targets.len());
            for (k, &b) in targets.iter().enumerate() {
                clbits[b] = k == pick;
            }
        }
        CircuitOp::StatePrep {
            qubits, amplitudes, ..
        } => state.prepare_subsystem(qubits, amplitudes)?,
    }
    Ok(())
}

fn measure<R: Rng + ?Sized>(state: &mut Statevector, qubit: usize, rng: &mut R) -> Result<bool> {
    let p1 = state.prob_one(qubit);
    let p0 = state.norm_sqr() - p1;
    let outcome = if p1 < PRUNE_PROBABILITY {
        false
    } else if p0 < PRUNE_PROBABILITY {
        true
    } else {
        rng.random::<f64>() * (p0 + p1) < p1
    };
    let p = if outcome { p1 } else { p0 };
    if p < PRUNE_PROBABILITY {
        return Err(Error::Unnormalizable {
            qubit,
            probability: p,
        });
    }
    state.collapse(qubit, outcome, p);
    Ok(outcome)
}

/// One shot from |0…0⟩ with all classical bits cleared.
pub fn run_shot<R: Rng + ?Sized>(program: &CircuitProgram, rng: &mut R) -> Result<ShotRecord> {
    program.validate()?;
    let mut state = Statevector::zero(program.num_qubits);
    let mut clbits = vec![false; program.num_clbits];
    for op in &program.ops {
        apply_op(&mut state, op, &mut clbits, rng)?;
    }
    Ok(ShotRecord { clbits })
}

/// `num_shots` shots; shot `i` uses stream `i` of the key derived from `seed`.
///
/// The leading run of ops that consume no randomness is simulated once and
/// shared by every shot. Shots run in parallel and are returned in index order.
pub fn run_shots(program: &CircuitProgram, num_shots: usize, seed: u64) -> Result<Vec<ShotRecord>> {
    if num_shots == 0 {
        return Err(Error::ZeroShots);
    }
    program.validate()?;
    let split = program
        .ops
        .iter()
        .position(|op| !op.is_deterministic())
        .unwrap_or(program.ops.len());
    let (prefix, rest) = program.ops.split_at(split);

    let mut prefix_state = Statevector::zero(program.num_qubits);
    let mut prefix_bits = vec![false; program.num_clbits];
    let mut unused = ShotStreams::new(seed).shot(u64::MAX);
    for op in prefix {
        apply_op(&mut prefix_state, op, &mut prefix_bits, &mut unused)?;
    }

    let streams = ShotStreams::new(seed);
    (0..num_shots)
        .into_par_iter()
        .map(|i| {
            let mut rng = streams.shot(i as u64);
            let mut state = prefix_state.clone();
            let mut clbits = prefix_bits.clone();
            for op in rest {
                apply_op(&mut state, op, &mut clbits, &mut rng)?;
            }
            Ok(ShotRecord { clbits })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn x_then_measure_reads_one() {
        let mut p = CircuitProgram::new(1, 1);
        p.push(CircuitOp::X { qubit: 0 })
            .push(CircuitOp::Measure { qubit: 0, clbit: 0 });
        let rec = run_shot(&p, &mut ShotStreams::new(0).shot(0)).unwrap();
        assert_eq!(rec.clbits, vec![true]);
    }

    #[test]
    fn empty_program_leaves_bits_clear() {
        let p = CircuitProgram::new(2, 3);
        let rec = run_shot(&p, &mut ShotStreams::new(0).shot(0)).unwrap();
        assert_eq!(rec.clbits, vec![false, false, false]);
    }

    #[test]
    fn reset_returns_qubit_to_zero() {
        for shot in 0..50 {
            let mut state = Statevector::zero(2);
            let mut bits = vec![];
            let mut rng = ShotStreams::new(11).shot(shot);
            state.apply_ry(1, 1.3);
            state.apply_cx(1, 0);
            apply_op(
                &mut state,
                &CircuitOp::Reset { qubit: 1 },
                &mut bits,
                &mut rng,
            )
            .unwrap();
            assert!(state.prob_one(1) < 1e-15);
            assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn measurement_collapses_target() {
        let mut state = Statevector::zero(2);
        state.apply_ry(0, PI / 2.0);
        state.apply_cx(0, 1);
        let mut bits = vec![false];
        let mut rng = ShotStreams::new(5).shot(0);
        apply_op(
            &mut state,
            &CircuitOp::Measure { qubit: 0, clbit: 0 },
            &mut bits,
            &mut rng,
        )
        .unwrap();
        let b = bits[0];
        for (i, a) in state.amplitudes().iter().enumerate() {
            if (i & 1 == 1) != b {
                assert_eq!(a.norm_sqr(), 0.0);
            }
        }
        // entangled partner follows
        assert_eq!(state.prob_one(1) > 0.5, b);
    }

    #[test]
    fn classical_if_gates_on_bit() {
        let mut p = CircuitProgram::new(1, 2);
        p.push(CircuitOp::ClassicalIf {
            clbit: 0,
            op: Box::new(CircuitOp::X { qubit: 0 }),
        })
        .push(CircuitOp::Measure { qubit: 0, clbit: 1 });
        let rec = run_shot(&p, &mut ShotStreams::new(0).shot(0)).unwrap();
        assert!(!rec.bit(1));

        let mut p = CircuitProgram::new(1, 2);
        p.push(CircuitOp::X { qubit: 0 })
            .push(CircuitOp::Measure { qubit: 0, clbit: 0 })
            .push(CircuitOp::ClassicalIf {
                clbit: 0,
                op: Box::new(CircuitOp::X { qubit: 0 }),
            })
            .push(CircuitOp::Measure { qubit: 0, clbit: 1 });
        let rec = run_shot(&p, &mut ShotStreams::new(0).shot(0)).unwrap();
        assert_eq!(rec.clbits, vec![true, false]);
    }

    #[test]
    fn zero_shots_rejected() {
        let p = CircuitProgram::new(1, 1);
        assert!(matches!(run_shots(&p, 0, 1), Err(Error::ZeroShots)));
    }

    #[test]
    fn shots_match_serial_execution() {
        let mut p = CircuitProgram::new(2, 2);
        p.push(CircuitOp::Ry {
            qubit: 0,
            angle: 1.0,
        })
        .push(CircuitOp::Measure { qubit: 0, clbit: 0 })
        .push(CircuitOp::Cry {
            control: 0,
            target: 1,
            angle: 2.0,
        })
        .push(CircuitOp::Measure { qubit: 1, clbit: 1 });
        let batch = run_shots(&p, 64, 99).unwrap();
        let streams = ShotStreams::new(99);
        for (i, rec) in batch.iter().enumerate() {
            assert_eq!(rec, &run_shot(&p, &mut streams.shot(i as u64)).unwrap());
        }
    }
}
