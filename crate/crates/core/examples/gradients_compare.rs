//! Exact, conventional and single-circuit gradients side by side.
//!
//!     cargo run --release --example gradients_compare -- [shots] [seed]

use onecircuit::data::generate_random_dataset;
use onecircuit::grad::{
    conventional_gradients, exact_gradients, improved_run, statistical_tolerance, ShiftRule,
    ShotPlan,
};
use onecircuit::vqc::AnsatzConfig;

fn main() -> onecircuit::Result<()> {
    let mut args = std::env::args().skip(1);
    let shots: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(4000);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let data = generate_random_dataset(5, 8, seed)?;
    let config = AnsatzConfig::new(3, 1, vec![0.3, 1.1, 2.0, 0.6, 2.8, 1.7])?;
    let rule = ShiftRule::default();

    let exact = exact_gradients(&data, &config, &rule)?;
    let conv = conventional_gradients(&data, &config, &rule, shots, seed)?;
    let run = improved_run(
        &data,
        &config,
        &rule,
        &ShotPlan::new(shots, config.num_params())?,
        seed,
    )?;
    let tol = run.tolerances();

    println!(
        "{:>5} {:>10} {:>12} {:>10} {:>8}",
        "param", "exact", "conventional", "improved", "tol"
    );
    for (i, t) in tol.iter().enumerate() {
        println!(
            "{:>5} {:>10.5} {:>12.5} {:>10.5} {:>8.4}",
            i + 1,
            exact.gradients[i],
            conv.gradients[i],
            run.report.gradients[i],
            t.max(statistical_tolerance(shots))
        );
    }
    println!(
        "conventional: {} shots over {} circuits per input",
        conv.shots_planned,
        2 * config.num_params() + 1
    );
    println!(
        "single circuit: {} shots, per index {:?}",
        run.report.shots_planned,
        run.report.per_index_shots.unwrap_or_default()
    );
    Ok(())
}
