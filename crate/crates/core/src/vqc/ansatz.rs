use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::CircuitOp;

/// Two-qubit entangling pattern between rotation layers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entanglement {
    /// CX on every pair (i, j), i < j, lexicographic, control i.
    #[default]
    Full,
}

/// RealAmplitudes ansatz: Q qubits, `reps` entangling repetitions, n = Q(reps+1) angles.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzConfig {
    pub num_qubits: usize,
    pub reps: usize,
    pub entanglement: Entanglement,
    pub theta: Vec<f64>,
}

pub fn num_params(num_qubits: usize, reps: usize) -> usize {
    num_qubits * (reps + 1)
}

impl AnsatzConfig {
    pub fn new(num_qubits: usize, reps: usize, theta: Vec<f64>) -> Result<Self> {
        let config = AnsatzConfig {
            num_qubits,
            reps,
            entanglement: Entanglement::Full,
            theta,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_qubits == 0 {
            return Err(Error::InvalidConfig(
                "ansatz needs at least one qubit".into(),
            ));
        }
        let n = num_params(self.num_qubits, self.reps);
        if self.theta.len() != n {
            return Err(Error::InvalidConfig(format!(
                "{} angles given, Q(r+1) = {n} required",
                self.theta.len()
            )));
        }
        if let Some(i) = self.theta.iter().position(|t| !t.is_finite()) {
            return Err(Error::InvalidConfig(format!("angle {i} is not finite")));
        }
        Ok(())
    }

    pub fn num_params(&self) -> usize {
        self.theta.len()
    }

    /// Qubit rotated by parameter `i`.
    pub fn param_qubit(&self, i: usize) -> usize {
        i % self.num_qubits
    }

    /// Copy with `theta[i] += delta`.
    pub fn shifted(&self, i: usize, delta: f64) -> Self {
        let mut out = self.clone();
        out.theta[i] += delta;
        out
    }

    pub fn with_theta(&self, theta: Vec<f64>) -> Result<Self> {
        AnsatzConfig::new(self.num_qubits, self.reps, theta)
    }
}

/// Ansatz ops plus the position of each parameter's RY within `ops`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ansatz {
    pub ops: Vec<CircuitOp>,
    pub param_ops: Vec<usize>,
}

fn entangling_block(
    num_qubits: usize,
    entanglement: Entanglement,
) -> impl Iterator<Item = CircuitOp> {
    let Entanglement::Full = entanglement;
    (0..num_qubits).flat_map(move |i| {
        (i + 1..num_qubits).map(move |j| CircuitOp::Cx {
            control: i,
            target: j,
        })
    })
}

/// One RY per qubit, then `reps` times: entangling block, one RY per qubit.
pub fn build_ansatz(config: &AnsatzConfig) -> Ansatz {
    let q = config.num_qubits;
    let mut ops = Vec::new();
    let mut param_ops = Vec::with_capacity(config.theta.len());
    let mut params = config.theta.iter().enumerate();
    for layer in 0..=config.reps {
        if layer > 0 {
            ops.extend(entangling_block(q, config.entanglement));
        }
        for (i, &angle) in params.by_ref().take(q) {
            param_ops.push(ops.len());
            ops.push(CircuitOp::Ry {
                qubit: config.param_qubit(i),
                angle,
            });
        }
    }
    Ansatz { ops, param_ops }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(ansatz: &Ansatz) -> (usize, usize) {
        let ry = ansatz
            .ops
            .iter()
            .filter(|o| matches!(o, CircuitOp::Ry { .. }))
            .count();
        let cx = ansatz
            .ops
            .iter()
            .filter(|o| matches!(o, CircuitOp::Cx { .. }))
            .count();
        (ry, cx)
    }

    #[test]
    fn gate_counts_match_real_amplitudes() {
        let a = build_ansatz(&AnsatzConfig::new(3, 1, vec![0.0; 6]).unwrap());
        assert_eq!(counts(&a), (6, 3));
        let a = build_ansatz(&AnsatzConfig::new(3, 2, vec![0.0; 9]).unwrap());
        assert_eq!(counts(&a), (9, 6));
        let a = build_ansatz(&AnsatzConfig::new(1, 0, vec![0.3]).unwrap());
        assert_eq!(
            a.ops,
            vec![CircuitOp::Ry {
                qubit: 0,
                angle: 0.3
            }]
        );
    }

    #[test]
    fn parameter_order_follows_construction() {
        let theta: Vec<f64> = (0..6).map(|i| i as f64).collect();
        let a = build_ansatz(&AnsatzConfig::new(3, 1, theta).unwrap());
        assert_eq!(a.param_ops, vec![0, 1, 2, 6, 7, 8]);
        for (i, &pos) in a.param_ops.iter().enumerate() {
            assert_eq!(
                a.ops[pos],
                CircuitOp::Ry {
                    qubit: i % 3,
                    angle: i as f64
                }
            );
        }
        assert_eq!(
            &a.ops[3..6],
            &[
                CircuitOp::Cx {
                    control: 0,
                    target: 1
                },
                CircuitOp::Cx {
                    control: 0,
                    target: 2
                },
                CircuitOp::Cx {
                    control: 1,
                    target: 2
                },
            ]
        );
    }

    #[test]
    fn parameter_count_is_q_times_reps_plus_one() {
        for q in 1..=6 {
            for r in 0..=3 {
                let cfg = AnsatzConfig::new(q, r, vec![0.1; q * (r + 1)]).unwrap();
                let a = build_ansatz(&cfg);
                assert_eq!(a.param_ops.len(), q * (r + 1));
                let (_, cx) = counts(&a);
                assert_eq!(cx, r * q * (q - 1) / 2);
            }
        }
    }

    #[test]
    fn invalid_configs_rejected() {
        assert!(AnsatzConfig::new(3, 1, vec![0.0; 5]).is_err());
        assert!(AnsatzConfig::new(0, 1, vec![]).is_err());
        assert!(AnsatzConfig::new(1, 0, vec![f64::NAN]).is_err());
    }
}
