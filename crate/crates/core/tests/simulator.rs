mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use onecircuit::grad::{build_improved_circuit, ShiftRule};
use onecircuit::rng::ShotStreams;
use onecircuit::sim::{
    apply_op, enumerate_branches, exact_distribution, run_shots, CircuitOp, CircuitProgram,
    Statevector,
};
use onecircuit::stats::chi_square;
use onecircuit::vqc::{
    amplitude_encode, build_vqc, cost_from_distribution, AnsatzConfig, EncodedInput,
};
use onecircuit::Error;
use proptest::prelude::*;

use common::{fired_blocks, max_amplitude_diff, random_problem};

fn random_state(seed_amps: &[f64]) -> Statevector {
    let amps: Vec<Complex64> = seed_amps
        .chunks(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Statevector::from_amplitudes(amps.into_iter().map(|z| z / norm).collect()).unwrap()
}

#[test]
fn ry_pi_flips_zero_to_one() {
    let mut s = Statevector::zero(1);
    s.apply_ry(0, PI);
    assert!((s.amplitudes()[1] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    assert!(s.amplitudes()[0].norm() < 1e-12);
}

#[test]
fn qubit_zero_is_least_significant() {
    let mut s = Statevector::zero(3);
    s.apply_x(0);
    s.apply_x(2);
    assert!((s.probabilities()[0b101] - 1.0).abs() < 1e-15);
}

#[test]
fn cx_flips_target_only_when_control_set() {
    let mut s = Statevector::zero(2);
    s.apply_cx(1, 0);
    assert!((s.probabilities()[0] - 1.0).abs() < 1e-15);
    s.apply_x(1);
    s.apply_cx(1, 0);
    assert!((s.probabilities()[0b11] - 1.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn shift_composes_with_rotation(
        theta in -10.0f64..10.0,
        target in 0usize..3,
        amps in prop::collection::vec(0.1f64..1.0, 16),
    ) {
        let mut a = random_state(&amps);
        let mut b = a.clone();
        a.apply_ry(target, theta);
        a.apply_ry(target, FRAC_PI_2);
        b.apply_ry(target, theta + FRAC_PI_2);
        prop_assert!(max_amplitude_diff(a.amplitudes(), b.amplitudes()) < 1e-12);
    }

    #[test]
    fn every_op_preserves_the_norm(
        ops in prop::collection::vec((0u8..6, 0usize..3, 0usize..3, -7.0f64..7.0), 1..40),
        seed in any::<u64>(),
        amps in prop::collection::vec(0.1f64..1.0, 16),
    ) {
        let mut state = random_state(&amps);
        let mut clbits = vec![false; 3];
        let mut rng = ShotStreams::new(seed).shot(0);
        for (kind, a, b, angle) in ops {
            let b = if a == b { (b + 1) % 3 } else { b };
            let op = match kind {
                0 => CircuitOp::Ry { qubit: a, angle },
                1 => CircuitOp::Cry { control: a, target: b, angle },
                2 => CircuitOp::Cx { control: a, target: b },
                3 => CircuitOp::X { qubit: a },
                4 => CircuitOp::Measure { qubit: a, clbit: b },
                _ => CircuitOp::Reset { qubit: a },
            };
            apply_op(&mut state, &op, &mut clbits, &mut rng).unwrap();
            prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn cost_is_linear_in_the_distribution(
        a in prop::collection::vec(0.0f64..1.0, 8),
        b in prop::collection::vec(0.0f64..1.0, 8),
        lambda in 0.0f64..1.0,
        label in 0usize..8,
    ) {
        let normalize = |v: &[f64]| {
            let s: f64 = v.iter().sum::<f64>() + 1e-3;
            v.iter().map(|x| (x + 1e-3 / 8.0) / s).collect::<Vec<_>>()
        };
        let (a, b) = (normalize(&a), normalize(&b));
        let mix: Vec<f64> = a.iter().zip(&b).map(|(x, y)| lambda * x + (1.0 - lambda) * y).collect();
        let lhs = cost_from_distribution(&mix, label).unwrap();
        let rhs = lambda * cost_from_distribution(&a, label).unwrap()
            + (1.0 - lambda) * cost_from_distribution(&b, label).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12);
        prop_assert!((lhs - 2.0 * (1.0 - mix[label])).abs() < 1e-12);
    }
}

#[test]
fn equal_superposition_measures_half_and_half() {
    let mut p = CircuitProgram::new(1, 1);
    p.push(CircuitOp::Ry {
        qubit: 0,
        angle: FRAC_PI_2,
    })
    .push(CircuitOp::Measure { qubit: 0, clbit: 0 });
    let shots = 10_000;
    let ones = run_shots(&p, shots, 11)
        .unwrap()
        .iter()
        .filter(|r| r.bit(0))
        .count() as f64;
    let sigma = (0.25 / shots as f64).sqrt();
    assert!((ones / shots as f64 - 0.5).abs() < 5.0 * sigma, "{ones}");
}

#[test]
fn records_are_reproducible_and_seed_dependent() {
    let (data, config) = random_problem(3, 1, 1, 21);
    let input = EncodedInput::new(&data.inputs[0]).unwrap();
    let (program, spec) = build_improved_circuit(&input, &config, &ShiftRule::default()).unwrap();
    let a = run_shots(&program, 6500, 7).unwrap();
    let b = run_shots(&program, 6500, 7).unwrap();
    let c = run_shots(&program, 6500, 8).unwrap();
    assert_eq!(a.len(), 6500);
    assert!(a.iter().all(|r| r.clbits.len() == spec.num_clbits()));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn parallel_and_serial_shots_agree() {
    let (data, config) = random_problem(2, 1, 1, 22);
    let input = EncodedInput::new(&data.inputs[0]).unwrap();
    let (program, _) = build_improved_circuit(&input, &config, &ShiftRule::default()).unwrap();
    let batch = run_shots(&program, 200, 5).unwrap();
    let streams = ShotStreams::new(5);
    for (i, record) in batch.iter().enumerate() {
        let serial = onecircuit::sim::run_shot(&program, &mut streams.shot(i as u64)).unwrap();
        assert_eq!(&serial, record);
    }
}

#[test]
fn improved_circuit_has_thirteen_equal_branches() {
    let (data, config) = random_problem(3, 1, 1, 23);
    let input = EncodedInput::new(&data.inputs[0]).unwrap();
    let (program, spec) = build_improved_circuit(&input, &config, &ShiftRule::default()).unwrap();
    let branches = enumerate_branches(&program).unwrap();
    assert_eq!(branches.len(), 13);
    for b in &branches {
        assert!((b.probability - 1.0 / 13.0).abs() < 1e-10);
        assert!(fired_blocks(&b.outcome_bits, &spec).len() <= 1);
    }
    let total: f64 = branches.iter().map(|b| b.probability).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn sampled_outcomes_follow_branch_probabilities() {
    // Joint (cost index, data outcome) histogram against branch probability
    // times the branch's data marginal.
    let (data, config) = random_problem(2, 0, 1, 24);
    let input = EncodedInput::new(&data.inputs[0]).unwrap();
    let (program, spec) = build_improved_circuit(&input, &config, &ShiftRule::default()).unwrap();
    let data_qubits: Vec<usize> = (0..2).collect();
    let cells = spec.num_cost_functions * 4;

    let mut expected = vec![0.0; cells];
    for b in enumerate_branches(&program).unwrap() {
        let index = match fired_blocks(&b.outcome_bits, &spec).as_slice() {
            [] => 0,
            [blk] => spec.block_map[*blk].cost_index(),
            _ => unreachable!(),
        };
        for (o, p) in b.final_state.marginal(&data_qubits).iter().enumerate() {
            expected[index * 4 + o] += b.probability * p;
        }
    }

    let shots = 100_000;
    let mut counts = vec![0u64; cells];
    for r in run_shots(&program, shots, 31).unwrap() {
        let d = onecircuit::grad::decode_shot(&r, &spec).unwrap();
        counts[d.index * 4 + d.data_outcome] += 1;
    }
    let expected: Vec<f64> = expected.iter().map(|p| p * shots as f64).collect();
    let test = chi_square(&counts, &expected);
    assert!(test.p_value > 0.001, "{test:?}");
}

#[test]
fn amplitude_encoding_sampling_matches_squared_amplitudes() {
    let x = [0.3, 1.2, 0.0, 2.0, 0.7, 0.1, 1.5, 0.9];
    let state = amplitude_encode(&x).unwrap();
    let norm2: f64 = x.iter().map(|v| v * v).sum();
    for (p, v) in state.probabilities().iter().zip(&x) {
        assert!((p - v * v / norm2).abs() < 1e-12);
    }
    let config = AnsatzConfig::new(3, 0, vec![0.0; 3]).unwrap();
    let vqc = build_vqc(&EncodedInput::new(&x).unwrap(), &config, 0).unwrap();
    let shots = 100_000;
    let mut counts = vec![0u64; 8];
    for r in run_shots(&vqc.program, shots, 3).unwrap() {
        counts[r.value(&[0, 1, 2])] += 1;
    }
    let expected: Vec<f64> = x.iter().map(|v| v * v / norm2 * shots as f64).collect();
    assert_eq!(counts[2], 0);
    let test = chi_square(&counts, &expected);
    assert!(test.p_value > 0.001, "{test:?}");
}

#[test]
fn encoding_pads_to_a_power_of_two() {
    let input = EncodedInput::new(&[3.0, 4.0, 0.0]).unwrap();
    assert_eq!((input.num_qubits(), input.dimension()), (2, 4));
    assert!((input.c_norm() - 0.2).abs() < 1e-12);
    assert_eq!(input.raw(), &[3.0, 4.0, 0.0, 0.0]);
    assert!(matches!(
        EncodedInput::new(&[0.0, 0.0]),
        Err(Error::ZeroVector)
    ));
    assert!(matches!(EncodedInput::new(&[]), Err(Error::EmptyInput)));
}

#[test]
fn exact_distribution_matches_a_million_shots() {
    let (data, config) = random_problem(3, 2, 1, 25);
    let vqc = build_vqc(&EncodedInput::new(&data.inputs[0]).unwrap(), &config, 0).unwrap();
    let exact = exact_distribution(&vqc.program, &[0, 1, 2]).unwrap();
    let shots = 1_000_000;
    let mut counts = [0u64; 8];
    for r in run_shots(&vqc.program, shots, 99).unwrap() {
        counts[r.value(&[0, 1, 2])] += 1;
    }
    for (c, p) in counts.iter().zip(&exact) {
        let sigma = (p * (1.0 - p) / shots as f64).sqrt();
        assert!(
            (*c as f64 / shots as f64 - p).abs() <= 5.0 * sigma + 1e-12,
            "{c} vs {p}"
        );
    }
}

#[test]
fn exact_distribution_rejects_mid_circuit_measurement() {
    let mut p = CircuitProgram::new(1, 2);
    p.push(CircuitOp::Measure { qubit: 0, clbit: 0 })
        .push(CircuitOp::X { qubit: 0 })
        .push(CircuitOp::Measure { qubit: 0, clbit: 1 });
    assert!(matches!(
        exact_distribution(&p, &[0]),
        Err(Error::MidCircuitMeasurement)
    ));
}

#[test]
fn validation_rejects_bad_indices() {
    let mut p = CircuitProgram::new(2, 1);
    p.push(CircuitOp::Cx {
        control: 1,
        target: 1,
    });
    assert!(matches!(p.validate(), Err(Error::DuplicateQubit(_))));
    let mut p = CircuitProgram::new(2, 1);
    p.push(CircuitOp::Ry {
        qubit: 2,
        angle: 0.0,
    });
    assert!(matches!(p.validate(), Err(Error::QubitOutOfRange { .. })));
    let mut p = CircuitProgram::new(2, 1);
    p.push(CircuitOp::Measure { qubit: 0, clbit: 1 });
    assert!(matches!(p.validate(), Err(Error::ClbitOutOfRange { .. })));
}

#[test]
fn reset_returns_to_zero() {
    let mut p = CircuitProgram::new(1, 1);
    p.push(CircuitOp::Ry {
        qubit: 0,
        angle: 1.1,
    })
    .push(CircuitOp::Reset { qubit: 0 })
    .push(CircuitOp::Measure { qubit: 0, clbit: 0 });
    assert!(run_shots(&p, 500, 1).unwrap().iter().all(|r| !r.bit(0)));
}
