//! Shift blocks for gates with U(θ + s) ≠ U(θ)·U(s).
//!
//! The block's CRY(±s) is replaced by a dice-controlled U′(θ)⁻¹ followed by a
//! dice-controlled U′(θ ± s), and the parameter's own RY becomes U′(θ). When
//! the block fires the data qubit sees U′(θ ± s)·U′(θ)⁻¹·U′(θ) = U′(θ ± s).

use std::collections::HashMap;

use super::ImprovedCircuitSpec;
use crate::error::{Error, Result};
use crate::sim::{
    adjoint, identity_matrix, mat_mul, max_deviation, CircuitOp, CircuitProgram, Mat2,
};

const UNITARY_TOLERANCE: f64 = 1e-10;

/// U′(θ_i), its inverse, and U′(θ_i ± s) for one block.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralShiftGates {
    pub base: Mat2,
    pub inverse: Mat2,
    pub shifted: Mat2,
}

fn check_unitary(m: &Mat2) -> Result<()> {
    let dev = max_deviation(&mat_mul(m, &adjoint(m)), &identity_matrix());
    if dev > UNITARY_TOLERANCE {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

impl GeneralShiftGates {
    pub fn validate(&self) -> Result<()> {
        check_unitary(&self.base)?;
        check_unitary(&self.inverse)?;
        check_unitary(&self.shifted)?;
        let dev = max_deviation(&mat_mul(&self.inverse, &self.base), &identity_matrix());
        if dev > UNITARY_TOLERANCE {
            return Err(Error::InverseMismatch(dev));
        }
        Ok(())
    }
}

/// Rewrites the listed blocks of a single gradient circuit for general gates.
/// Blocks of the same parameter must agree on `base`.
pub fn general_shift_insertion(
    program: &CircuitProgram,
    spec: &ImprovedCircuitSpec,
    insertions: &[(usize, GeneralShiftGates)],
) -> Result<CircuitProgram> {
    let dice = spec
        .ancillas
        .ok_or_else(|| {
            Error::InvalidConfig("general shifts need the quantum-controlled circuit".into())
        })?
        .dice;
    let mut replace: HashMap<usize, Vec<CircuitOp>> = HashMap::new();
    for (block, gates) in insertions {
        let block = *block;
        if block >= spec.num_blocks() {
            return Err(Error::BlockOutOfRange {
                block,
                num_blocks: spec.num_blocks(),
            });
        }
        gates.validate()?;
        let param_pos = spec.param_ops[spec.block_map[block].param];
        let shift_pos = spec.block_ops[block] + 2;
        let (CircuitOp::Ry { qubit, .. } | CircuitOp::Unitary { qubit, .. }) =
            program.ops[param_pos]
        else {
            return Err(Error::InvalidConfig(format!(
                "op {param_pos} is not a parameterized gate"
            )));
        };
        if !matches!(program.ops[shift_pos], CircuitOp::Cry { control, target, .. } if control == dice && target == qubit)
        {
            return Err(Error::InvalidConfig(format!(
                "op {shift_pos} is not block {block}'s shift gate"
            )));
        }
        let base = vec![CircuitOp::Unitary {
            qubit,
            matrix: gates.base,
        }];
        if let Some(previous) = replace.insert(param_pos, base.clone()) {
            if previous != base {
                return Err(Error::InvalidConfig(format!(
                    "blocks of parameter {} disagree on the base gate",
                    spec.block_map[block].param
                )));
            }
        }
        replace.insert(
            shift_pos,
            vec![
                CircuitOp::ControlledUnitary {
                    control: dice,
                    target: qubit,
                    matrix: gates.inverse,
                },
                CircuitOp::ControlledUnitary {
                    control: dice,
                    target: qubit,
                    matrix: gates.shifted,
                },
            ],
        );
    }
    let mut out = CircuitProgram::new(program.num_qubits, program.num_clbits);
    for (pos, op) in program.ops.iter().enumerate() {
        match replace.remove(&pos) {
            Some(ops) => out.ops.extend(ops),
            None => out.ops.push(op.clone()),
        }
    }
    Ok(out)
}
