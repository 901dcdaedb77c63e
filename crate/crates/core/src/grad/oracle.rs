use super::{build_improved_circuit, shifted_configs, ImprovedCircuitSpec, ShiftRule};
use crate::error::{Error, Result};
use crate::sim::{enumerate_branches, Branch, CircuitProgram};
use crate::vqc::{build_vqc, AnsatzConfig, EncodedInput};

pub const ORACLE_TOLERANCE: f64 = 1e-10;

/// Worst deviations seen by a passing branch check.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchOracleReport {
    pub branches: usize,
    pub max_probability_error: f64,
    pub max_distribution_error: f64,
}

/// Which block a branch fired, if any.
fn fired_block(branch: &Branch, spec: &ImprovedCircuitSpec) -> Result<Option<usize>> {
    let fired: Vec<usize> = spec
        .block_clbits
        .iter()
        .enumerate()
        .filter(|(_, c)| branch.outcome_bits.get(c).copied().unwrap_or(false))
        .map(|(b, _)| b)
        .collect();
    match fired.as_slice() {
        [] => Ok(None),
        [b] => Ok(Some(*b)),
        _ => Err(Error::MultipleActivations {
            count: fired.len(),
            blocks: fired,
        }),
    }
}

/// Enumerates every branch of a single-circuit gradient program and checks
/// that there are exactly N of them, one per cost index, each of probability
/// 1/N, and that each branch's data distribution matches `expected(index)`.
pub fn check_branches<F>(
    program: &CircuitProgram,
    spec: &ImprovedCircuitSpec,
    expected: F,
) -> Result<BranchOracleReport>
where
    F: Fn(usize) -> Result<Vec<f64>>,
{
    let branches = enumerate_branches(program)?;
    let big_n = spec.num_cost_functions;
    if branches.len() != big_n {
        return Err(Error::OracleMismatch(format!(
            "{} branches, expected {big_n}",
            branches.len()
        )));
    }
    let data_qubits: Vec<usize> = (0..spec.num_data_qubits).collect();
    let mut seen = vec![false; big_n];
    let mut report = BranchOracleReport {
        branches: branches.len(),
        max_probability_error: 0.0,
        max_distribution_error: 0.0,
    };
    for branch in &branches {
        let index = fired_block(branch, spec)?.map_or(0, |b| spec.block_map[b].cost_index());
        if std::mem::replace(&mut seen[index], true) {
            return Err(Error::OracleMismatch(format!(
                "cost index {index} reached by two branches"
            )));
        }
        let p_err = (branch.probability - 1.0 / big_n as f64).abs();
        if p_err > ORACLE_TOLERANCE {
            return Err(Error::OracleMismatch(format!(
                "cost index {index}: probability {} differs from 1/{big_n} by {p_err:e}",
                branch.probability
            )));
        }
        let got = branch.final_state.marginal(&data_qubits);
        let want = expected(index)?;
        for (outcome, (g, w)) in got.iter().zip(&want).enumerate() {
            let d = (g - w).abs();
            if d > ORACLE_TOLERANCE {
                return Err(Error::OracleMismatch(format!(
                    "cost index {index}, outcome {outcome}: branch gives {g}, plain circuit gives {w} (diff {d:e})"
                )));
            }
            report.max_distribution_error = report.max_distribution_error.max(d);
        }
        report.max_probability_error = report.max_probability_error.max(p_err);
    }
    Ok(report)
}

/// Branch-level verification of the single gradient circuit against the
/// plain circuit evaluated at each shifted parameter vector.
pub fn branch_oracle_check(
    input: &EncodedInput,
    config: &AnsatzConfig,
    rule: &ShiftRule,
) -> Result<BranchOracleReport> {
    let (program, spec) = build_improved_circuit(input, config, rule)?;
    let configs = shifted_configs(config, rule);
    check_branches(&program, &spec, |index| {
        build_vqc(input, &configs[index], 0)?.data_distribution()
    })
}
