//! Depth, classical-register and op-count model for both gradient strategies,
//! cross-checked against the circuits this crate actually builds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grad::{build_conventional_stack, build_improved_circuit_with_depth, ShiftRule};
use crate::sim::CircuitProgram;
use crate::vqc::{build_vqc, AnsatzConfig, EncodedInput};

/// As-soon-as-possible layer count. Every op starts one layer after the
/// latest layer on any qubit or classical bit it touches, and occupies
/// [`crate::sim::CircuitOp::depth`] layers there.
pub fn measure_depth(program: &CircuitProgram) -> usize {
    let mut qubit_level = vec![0usize; program.num_qubits];
    let mut clbit_level = vec![0usize; program.num_clbits];
    let mut depth = 0;
    for op in &program.ops {
        let qubits = op.qubits();
        let clbits = op.clbits();
        let start = qubits
            .iter()
            .map(|&q| qubit_level[q])
            .chain(clbits.iter().map(|&c| clbit_level[c]))
            .max()
            .unwrap_or(0);
        let end = start + op.depth();
        for q in qubits {
            qubit_level[q] = end;
        }
        for c in clbits {
            clbit_level[c] = end;
        }
        depth = depth.max(end);
    }
    depth
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResourceCheck {
    pub name: String,
    pub modeled: String,
    pub measured: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasuredResources {
    pub base_ops: usize,
    pub improved_ops: usize,
    /// Improved ops minus base ops minus ancilla preparation and readout.
    pub block_overhead_ops: usize,
    pub ancilla_bookkeeping_ops: usize,
    pub improved_depth: usize,
    pub conventional_stack_depth: usize,
    pub improved_clbits: usize,
    pub conventional_clbits: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResourceReport {
    #[serde(rename = "Q")]
    pub num_qubits: usize,
    pub reps: usize,
    pub n: usize,
    pub feature_map_depth: usize,
    /// Λ: depth of one full cost-function circuit.
    #[serde(rename = "Lambda")]
    pub base_depth: usize,
    /// Δ: depth added by one more repetition.
    #[serde(rename = "Delta")]
    pub rep_depth: usize,
    /// Λ₀ = Λ − rΔ.
    #[serde(rename = "Lambda0")]
    pub fixed_depth: isize,
    /// λ = Λ/n.
    pub lambda: f64,
    #[serde(rename = "D_conv")]
    pub conventional_depth: usize,
    #[serde(rename = "D_impr")]
    pub improved_depth: usize,
    #[serde(rename = "N_conv")]
    pub conventional_clbits: usize,
    #[serde(rename = "N_impr")]
    pub improved_clbits: usize,
    pub measured: MeasuredResources,
    pub checks: Vec<ResourceCheck>,
}

impl ResourceReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn base_depth(
    input: &EncodedInput,
    num_qubits: usize,
    reps: usize,
    feature_map_depth: usize,
) -> Result<usize> {
    let n = num_qubits * (reps + 1);
    let config = AnsatzConfig::new(num_qubits, reps, vec![0.0; n])?;
    Ok(measure_depth(
        &build_vqc(input, &config, feature_map_depth)?.program,
    ))
}

fn equality(name: &str, modeled: usize, measured: usize) -> ResourceCheck {
    ResourceCheck {
        name: name.into(),
        modeled: modeled.to_string(),
        measured,
        ok: modeled == measured,
    }
}

fn within(name: &str, lo: usize, hi: usize, measured: usize) -> ResourceCheck {
    ResourceCheck {
        name: name.into(),
        modeled: format!("[{lo}, {hi}]"),
        measured,
        ok: (lo..=hi).contains(&measured),
    }
}

/// Evaluates the resource formulas for `config` and checks them against the
/// constructed circuits. Mismatches are reported in `checks`, not as errors.
pub fn model_resources(config: &AnsatzConfig, feature_map_depth: usize) -> Result<ResourceReport> {
    config.validate()?;
    let q = config.num_qubits;
    let r = config.reps;
    let n = config.num_params();
    let rule = ShiftRule::default();
    let input = EncodedInput::new(&vec![1.0; 1 << q])?;

    let base = build_vqc(&input, config, feature_map_depth)?.program;
    let lambda_depth = measure_depth(&base);
    let rep_depth = base_depth(&input, q, r + 1, feature_map_depth)? - lambda_depth;
    let fixed_depth = lambda_depth as isize - (r * rep_depth) as isize;

    let (improved, spec) =
        build_improved_circuit_with_depth(&input, config, &rule, feature_map_depth)?;
    let mut improved_body = improved.clone();
    improved_body
        .ops
        .truncate(improved.len() - spec.ancilla_clbits.len());
    let stack = build_conventional_stack(&input, config, &rule, feature_map_depth)?;

    let measured = MeasuredResources {
        base_ops: base.len(),
        improved_ops: improved.len(),
        block_overhead_ops: improved.len() - base.len() - spec.ancilla_bookkeeping_ops(),
        ancilla_bookkeeping_ops: spec.ancilla_bookkeeping_ops(),
        improved_depth: measure_depth(&improved_body),
        conventional_stack_depth: measure_depth(&stack),
        improved_clbits: improved.num_clbits,
        conventional_clbits: stack.num_clbits,
    };

    let conventional_depth = lambda_depth * (2 * n + 1);
    let improved_depth = lambda_depth + 10 * n;
    let conventional_clbits = q * (2 * n + 1);
    let improved_clbits = q + 2 * n + 2;
    let checks = vec![
        equality(
            "n = Q(r+1)",
            q * (r + 1),
            crate::vqc::build_ansatz(config).param_ops.len(),
        ),
        equality(
            "block op overhead = 10n",
            10 * n,
            measured.block_overhead_ops,
        ),
        equality(
            "improved classical bits = Q+2n+2",
            improved_clbits,
            measured.improved_clbits,
        ),
        equality(
            "stacked classical bits = Q(2n+1)",
            conventional_clbits,
            measured.conventional_clbits,
        ),
        within(
            "improved depth in [10n, Lambda+10n]",
            10 * n,
            improved_depth,
            measured.improved_depth,
        ),
        within(
            "stacked depth in [D_conv, D_conv+2n]",
            conventional_depth,
            conventional_depth + 2 * n,
            measured.conventional_stack_depth,
        ),
    ];

    Ok(ResourceReport {
        num_qubits: q,
        reps: r,
        n,
        feature_map_depth,
        base_depth: lambda_depth,
        rep_depth,
        fixed_depth,
        lambda: lambda_depth as f64 / n as f64,
        conventional_depth,
        improved_depth,
        conventional_clbits,
        improved_clbits,
        measured,
        checks,
    })
}

/// λ(n) = (Λ₀ − Δ)/n + Δ/Q over a sequence of parameter counts.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSeries {
    pub values: Vec<f64>,
    /// Δ/Q.
    pub limit: f64,
    /// Distance to the limit never increases along the sequence.
    pub monotone: bool,
}

pub fn lambda_asymptote(
    rep_depth: f64,
    num_qubits: usize,
    fixed_depth: f64,
    ns: &[usize],
) -> Result<LambdaSeries> {
    if rep_depth.is_nan() || rep_depth <= 0.0 || num_qubits == 0 {
        return Err(Error::InvalidConfig("Delta and Q must be positive".into()));
    }
    if ns.contains(&0) {
        return Err(Error::InvalidConfig("n must be positive".into()));
    }
    let limit = rep_depth / num_qubits as f64;
    let values: Vec<f64> = ns
        .iter()
        .map(|&n| (fixed_depth - rep_depth) / n as f64 + limit)
        .collect();
    let monotone = ns.windows(2).all(|w| w[0] <= w[1])
        && values
            .windows(2)
            .all(|w| (w[1] - limit).abs() <= (w[0] - limit).abs() + 1e-15);
    Ok(LambdaSeries {
        values,
        limit,
        monotone,
    })
}
