//! Enumerates every branch of the single gradient circuit and checks each one
//! against the plain circuit at the matching shifted parameters.

use onecircuit::data::generate_random_dataset;
use onecircuit::grad::{branch_oracle_check, build_improved_circuit, ShiftRule};
use onecircuit::sim::enumerate_branches;
use onecircuit::vqc::{AnsatzConfig, EncodedInput};

fn main() -> onecircuit::Result<()> {
    let data = generate_random_dataset(1, 8, 7)?;
    let input = EncodedInput::new(&data.inputs[0])?;
    let config = AnsatzConfig::new(3, 1, vec![0.1, 0.7, 1.3, 1.9, 2.5, 3.1])?;
    let rule = ShiftRule::default();

    let (program, spec) = build_improved_circuit(&input, &config, &rule)?;
    println!(
        "{} qubits, {} clbits, {} ops, N = {}",
        program.num_qubits,
        program.num_clbits,
        program.len(),
        spec.num_cost_functions
    );
    for (j, g) in spec.gammas.iter().enumerate() {
        println!("  gamma_{j:<2} = {g:.6}");
    }

    for b in enumerate_branches(&program)? {
        let fired: Vec<usize> = spec
            .block_clbits
            .iter()
            .enumerate()
            .filter(|(_, c)| b.outcome_bits.get(c) == Some(&true))
            .map(|(blk, _)| blk)
            .collect();
        let index = fired
            .first()
            .map_or(0, |&blk| spec.block_map[blk].cost_index());
        println!("cost index {index:>2}: p = {:.12}", b.probability);
    }

    let report = branch_oracle_check(&input, &config, &rule)?;
    println!(
        "oracle: {} branches, max |p - 1/N| = {:.1e}, max distribution error = {:.1e}",
        report.branches, report.max_probability_error, report.max_distribution_error
    );
    Ok(())
}
