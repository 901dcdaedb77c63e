//! The ancilla-free variant: a classical draw picks the cost index and
//! classically controlled rotations apply the shift.

use onecircuit::data::generate_random_dataset;
use onecircuit::grad::{
    build_classical_control_circuit, classical_control_run, exact_gradients, ShiftRule, ShotPlan,
};
use onecircuit::vqc::{build_base_vqc, AnsatzConfig, EncodedInput};

fn main() -> onecircuit::Result<()> {
    let data = generate_random_dataset(5, 8, 11)?;
    let config = AnsatzConfig::new(3, 1, vec![0.4, 1.0, 1.6, 2.2, 2.8, 0.2])?;
    let rule = ShiftRule::default();

    let input = EncodedInput::new(&data.inputs[0])?;
    let base = build_base_vqc(&input, &config)?;
    let (variant, _) = build_classical_control_circuit(&input, &config, &rule)?;
    println!(
        "{} qubits, {} extra ops ({:.2} per parameter)",
        variant.num_qubits,
        variant.len() - base.len(),
        (variant.len() - base.len()) as f64 / config.num_params() as f64
    );

    let exact = exact_gradients(&data, &config, &rule)?;
    let run = classical_control_run(
        &data,
        &config,
        &rule,
        &ShotPlan::new(4000, config.num_params())?,
        11,
    )?;
    for (i, (g, e)) in run
        .report
        .gradients
        .iter()
        .zip(&exact.gradients)
        .enumerate()
    {
        println!("d/dtheta_{i}: {g:+.5} (exact {e:+.5})");
    }
    Ok(())
}
