//! A Bell pair, a mid-circuit measurement and a reset, sampled and enumerated.

use std::f64::consts::FRAC_PI_2;

use onecircuit::sim::{enumerate_branches, run_shots, CircuitOp, CircuitProgram};

fn main() -> onecircuit::Result<()> {
    let mut program = CircuitProgram::new(2, 3);
    program
        .push(CircuitOp::Ry {
            qubit: 0,
            angle: FRAC_PI_2,
        })
        .push(CircuitOp::Cx {
            control: 0,
            target: 1,
        })
        .push(CircuitOp::Measure { qubit: 1, clbit: 0 })
        .push(CircuitOp::Reset { qubit: 1 })
        .push(CircuitOp::ClassicalIf {
            clbit: 0,
            op: Box::new(CircuitOp::X { qubit: 1 }),
        })
        .push(CircuitOp::Measure { qubit: 0, clbit: 1 })
        .push(CircuitOp::Measure { qubit: 1, clbit: 2 });

    let shots = run_shots(&program, 10_000, 42)?;
    let mut hist = [0usize; 8];
    for r in &shots {
        hist[r.value(&[0, 1, 2])] += 1;
    }
    println!("sampled (c2 c1 c0):");
    for (v, c) in hist.iter().enumerate().filter(|(_, &c)| c > 0) {
        println!("  {v:03b}  {c}");
    }

    println!("branches:");
    for b in enumerate_branches(&program)? {
        println!("  bits {:?}  p = {:.4}", b.outcome_bits, b.probability);
    }
    Ok(())
}
