//! Dense statevector simulation with mid-circuit measurement, reset and
//! classical control, plus exact branch enumeration.

mod branches;
mod circuit;
mod execute;
mod statevector;

pub use branches::{
    enumerate_branches, enumerate_branches_with, exact_distribution, Branch, BranchOptions,
};
pub use circuit::{max_qubits, CircuitOp, CircuitProgram, DEFAULT_MAX_QUBITS};
pub use execute::{apply_op, run_shot, run_shots, ShotRecord, PRUNE_PROBABILITY};
pub use statevector::{
    adjoint, identity_matrix, mat_mul, max_deviation, ry_matrix, x_matrix, Mat2, Statevector,
};
