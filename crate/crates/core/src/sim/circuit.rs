use std::sync::Arc;

use num_complex::Complex64;

use super::statevector::Mat2;
use crate::error::{Error, Result};

/// Default cap on simulated qubits; `ONECIRCUIT_MAX_QUBITS` overrides it.
pub const DEFAULT_MAX_QUBITS: usize = 16;

pub fn max_qubits() -> usize {
    std::env::var("ONECIRCUIT_MAX_QUBITS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_QUBITS)
}

/// One instruction of a [`CircuitProgram`]. Two-qubit ops list the control first.
#[derive(Clone, Debug, PartialEq)]
pub enum CircuitOp {
    Ry {
        qubit: usize,
        angle: f64,
    },
    Cry {
        control: usize,
        target: usize,
        angle: f64,
    },
    Cx {
        control: usize,
        target: usize,
    },
    X {
        qubit: usize,
    },
    /// Arbitrary single-qubit unitary, used for generalized parameterized gates.
    Unitary {
        qubit: usize,
        matrix: Mat2,
    },
    ControlledUnitary {
        control: usize,
        target: usize,
        matrix: Mat2,
    },
    /// Computational-basis measurement; the outcome is written to `clbit`.
    Measure {
        qubit: usize,
        clbit: usize,
    },
    /// Measure, then flip back to |0⟩ if the outcome was 1. Nothing is recorded.
    Reset {
        qubit: usize,
    },
    /// Applies `op` iff classical bit `clbit` is 1.
    ClassicalIf {
        clbit: usize,
        op: Box<CircuitOp>,
    },
    /// Classical random draw: with probability 1/(k+1) each, sets exactly one
    /// of the k listed bits to 1, or none of them.
    ClassicalDraw {
        clbits: Vec<usize>,
    },
    /// Loads a fixed state into `qubits` (which must be in |0…0⟩). Stands in
    /// for a feature-map circuit of `depth` layers.
    StatePrep {
        qubits: Vec<usize>,
        amplitudes: Arc<[Complex64]>,
        depth: usize,
    },
}

impl CircuitOp {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            CircuitOp::Ry { qubit, .. }
            | CircuitOp::X { qubit }
            | CircuitOp::Unitary { qubit, .. }
            | CircuitOp::Measure { qubit, .. }
            | CircuitOp::Reset { qubit } => vec![*qubit],
            CircuitOp::Cry {
                control, target, ..
            }
            | CircuitOp::Cx { control, target }
            | CircuitOp::ControlledUnitary {
                control, target, ..
            } => vec![*control, *target],
            CircuitOp::ClassicalIf { op, .. } => op.qubits(),
            CircuitOp::ClassicalDraw { .. } => Vec::new(),
            CircuitOp::StatePrep { qubits, .. } => qubits.clone(),
        }
    }

    /// Classical bits read or written.
    pub fn clbits(&self) -> Vec<usize> {
        match self {
            CircuitOp::Measure { clbit, .. } => vec![*clbit],
            CircuitOp::ClassicalIf { clbit, op } => {
                let mut bits = vec![*clbit];
                bits.extend(op.clbits());
                bits
            }
            CircuitOp::ClassicalDraw { clbits } => clbits.clone(),
            _ => Vec::new(),
        }
    }

    /// True for ops that never consume randomness.
    pub fn is_deterministic(&self) -> bool {
        match self {
            CircuitOp::Measure { .. }
            | CircuitOp::Reset { .. }
            | CircuitOp::ClassicalDraw { .. } => false,
            CircuitOp::ClassicalIf { op, .. } => op.is_deterministic(),
            _ => true,
        }
    }

    /// Layers this op occupies in a depth count.
    pub fn depth(&self) -> usize {
        match self {
            CircuitOp::StatePrep { depth, .. } => *depth,
            _ => 1,
        }
    }

    fn validate(&self, num_qubits: usize, num_clbits: usize) -> Result<()> {
        let qubits = self.qubits();
        for (k, &q) in qubits.iter().enumerate() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits,
                });
            }
            if qubits[..k].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        for c in self.clbits() {
            if c >= num_clbits {
                return Err(Error::ClbitOutOfRange {
                    clbit: c,
                    num_clbits,
                });
            }
        }
        match self {
            CircuitOp::StatePrep {
                qubits, amplitudes, ..
            } => {
                if amplitudes.len() != 1 << qubits.len() {
                    return Err(Error::InvalidState(format!(
                        "state preparation of {} qubits given {} amplitudes",
                        qubits.len(),
                        amplitudes.len()
                    )));
                }
                let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
                if (norm - 1.0).abs() > 1e-10 {
                    return Err(Error::InvalidState(format!(
                        "state preparation amplitudes have squared norm {norm}"
                    )));
                }
            }
            CircuitOp::ClassicalIf { op, .. } => op.validate(num_qubits, num_clbits)?,
            _ => {}
        }
        Ok(())
    }
}

/// Ordered instruction list over `num_qubits` qubits and `num_clbits` classical bits.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitProgram {
    pub num_qubits: usize,
    pub num_clbits: usize,
    pub ops: Vec<CircuitOp>,
}

impl CircuitProgram {
    pub fn new(num_qubits: usize, num_clbits: usize) -> Self {
        CircuitProgram {
            num_qubits,
            num_clbits,
            ops: Vec::new(),
        }
    }

    pub fn push(&mut self, op: CircuitOp) -> &mut Self {
        self.ops.push(op);
        self
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let cap = max_qubits();
        if self.num_qubits > cap {
            return Err(Error::TooManyQubits {
                requested: self.num_qubits,
                cap,
            });
        }
        self.ops
            .iter()
            .try_for_each(|op| op.validate(self.num_qubits, self.num_clbits))
    }

    /// Marks each `Measure` whose qubit and bit are never touched again.
    /// Such measurements do not change what happens afterwards, so the
    /// branch enumerator leaves them folded into the final state.
    pub fn terminal_measurements(&self) -> Vec<bool> {
        let mut qubit_used = vec![false; self.num_qubits];
        let mut clbit_used = vec![false; self.num_clbits];
        let mut terminal = vec![false; self.ops.len()];
        for (i, op) in self.ops.iter().enumerate().rev() {
            if let CircuitOp::Measure { qubit, clbit } = op {
                terminal[i] = !qubit_used[*qubit] && !clbit_used[*clbit];
            }
            for q in op.qubits() {
                qubit_used[q] = true;
            }
            for c in op.clbits() {
                clbit_used[c] = true;
            }
        }
        terminal
    }
}
