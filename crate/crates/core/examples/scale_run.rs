//! Ten data qubits, two repetitions: 30 parameters, 61 cost functions, one circuit.

use std::time::Instant;

use onecircuit::data::generate_random_dataset;
use onecircuit::grad::{
    build_improved_circuit, exact_gradients, improved_run, ShiftRule, ShotPlan,
};
use onecircuit::vqc::{num_params, AnsatzConfig, EncodedInput};

fn main() -> onecircuit::Result<()> {
    let (q, reps) = (10, 2);
    let data = generate_random_dataset(2, 1 << q, 17)?;
    let config = AnsatzConfig::new(
        q,
        reps,
        (0..num_params(q, reps)).map(|i| 0.2 * i as f64).collect(),
    )?;
    let rule = ShiftRule::default();

    let (program, spec) =
        build_improved_circuit(&EncodedInput::new(&data.inputs[0])?, &config, &rule)?;
    println!(
        "{} qubits, {} clbits, {} ops, N = {}",
        program.num_qubits,
        spec.num_clbits(),
        program.len(),
        spec.num_cost_functions
    );

    let start = Instant::now();
    let run = improved_run(
        &data,
        &config,
        &rule,
        &ShotPlan::new(100, config.num_params())?,
        17,
    )?;
    println!(
        "{} shots in {:.1?}",
        run.report.shots_planned,
        start.elapsed()
    );

    let exact = exact_gradients(&data, &config, &rule)?;
    let tol = run.tolerances();
    let inside = (0..config.num_params())
        .filter(|&i| (run.report.gradients[i] - exact.gradients[i]).abs() <= tol[i])
        .count();
    println!(
        "{inside}/{} components within 5 sigma of the exact gradient",
        config.num_params()
    );
    Ok(())
}
