use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major 2x2 complex matrix acting on one qubit.
pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// RY(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]].
pub fn ry_matrix(angle: f64) -> Mat2 {
    let (s, c) = (angle / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

pub fn x_matrix() -> Mat2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn identity_matrix() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn adjoint(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// Largest entrywise modulus of `a − b`.
pub fn max_deviation(a: &Mat2, b: &Mat2) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Dense statevector. Qubit 0 is the least-significant bit of a basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// |0…0⟩ on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        amplitudes[0] = ONE;
        Statevector {
            num_qubits,
            amplitudes,
        }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "amplitude count {len} is not a power of two"
            )));
        }
        let state = Statevector {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!("squared norm {norm} is not 1")));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn apply_ry(&mut self, qubit: usize, angle: f64) {
        let (s, c) = (angle / 2.0).sin_cos();
        self.for_each_pair(qubit, None, |a0, a1| {
            let (x0, x1) = (*a0, *a1);
            *a0 = x0 * c - x1 * s;
            *a1 = x0 * s + x1 * c;
        });
    }

    pub fn apply_controlled_ry(&mut self, control: usize, target: usize, angle: f64) {
        let (s, c) = (angle / 2.0).sin_cos();
        self.for_each_pair(target, Some(control), |a0, a1| {
            let (x0, x1) = (*a0, *a1);
            *a0 = x0 * c - x1 * s;
            *a1 = x0 * s + x1 * c;
        });
    }

    pub fn apply_x(&mut self, qubit: usize) {
        self.for_each_pair(qubit, None, std::mem::swap);
    }

    pub fn apply_cx(&mut self, control: usize, target: usize) {
        self.for_each_pair(target, Some(control), std::mem::swap);
    }

    pub fn apply_matrix(&mut self, qubit: usize, m: &Mat2) {
        self.for_each_pair(qubit, None, |a0, a1| {
            let (x0, x1) = (*a0, *a1);
            *a0 = m[0][0] * x0 + m[0][1] * x1;
            *a1 = m[1][0] * x0 + m[1][1] * x1;
        });
    }

    pub fn apply_controlled_matrix(&mut self, control: usize, target: usize, m: &Mat2) {
        self.for_each_pair(target, Some(control), |a0, a1| {
            let (x0, x1) = (*a0, *a1);
            *a0 = m[0][0] * x0 + m[0][1] * x1;
            *a1 = m[1][0] * x0 + m[1][1] * x1;
        });
    }

    /// Probability of reading 1 on `qubit`.
    pub fn prob_one(&self, qubit: usize) -> f64 {
        let mask = 1usize << qubit;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Projects `qubit` onto `outcome` and renormalizes by the branch probability.
    pub fn collapse(&mut self, qubit: usize, outcome: bool, probability: f64) {
        let mask = 1usize << qubit;
        let scale = 1.0 / probability.sqrt();
        for (i, a) in self.amplitudes.iter_mut().enumerate() {
            if (i & mask != 0) == outcome {
                *a *= scale;
            } else {
                *a = ZERO;
            }
        }
    }

    /// Loads `amplitudes` into `qubits`, which must currently be in |0…0⟩.
    /// `amplitudes[k]` lands on the basis state whose bit `j` of `k` sits on
    /// `qubits[j]`.
    pub fn prepare_subsystem(&mut self, qubits: &[usize], amplitudes: &[Complex64]) -> Result<()> {
        if amplitudes.len() != 1 << qubits.len() {
            return Err(Error::InvalidState(format!(
                "{} amplitudes for {} qubits",
                amplitudes.len(),
                qubits.len()
            )));
        }
        let mask: usize = qubits.iter().map(|q| 1usize << q).sum();
        let stray: f64 = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        if stray > 1e-12 {
            return Err(Error::InvalidState(
                "state preparation requires its target qubits in |0>".into(),
            ));
        }
        let offsets: Vec<usize> = (0..amplitudes.len())
            .map(|k| {
                qubits
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| k >> j & 1 == 1)
                    .map(|(_, q)| 1usize << q)
                    .sum()
            })
            .collect();
        let mut out = vec![ZERO; self.amplitudes.len()];
        for (base, a) in self.amplitudes.iter().enumerate() {
            if base & mask != 0 || *a == ZERO {
                continue;
            }
            for (offset, amp) in offsets.iter().zip(amplitudes) {
                out[base | offset] = a * amp;
            }
        }
        self.amplitudes = out;
        Ok(())
    }

    /// Born distribution over `qubits`; outcome bit `j` is `qubits[j]`.
    pub fn marginal(&self, qubits: &[usize]) -> Vec<f64> {
        let mut dist = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let k = qubits
                .iter()
                .enumerate()
                .fold(0usize, |k, (j, q)| k | ((i >> q) & 1) << j);
            dist[k] += p;
        }
        dist
    }

    fn for_each_pair<F>(&mut self, target: usize, control: Option<usize>, mut f: F)
    where
        F: FnMut(&mut Complex64, &mut Complex64),
    {
        let stride = 1usize << target;
        let cmask = control.map_or(0, |c| 1usize << c);
        for (chunk, block) in self.amplitudes.chunks_exact_mut(stride << 1).enumerate() {
            let base = chunk * (stride << 1);
            let (lo, hi) = block.split_at_mut(stride);
            for (k, (a0, a1)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                if (base | k) & cmask == cmask {
                    f(a0, a1);
                }
            }
        }
    }
}
