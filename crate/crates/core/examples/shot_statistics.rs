//! How evenly the single circuit spreads its shots over the 2n+1 cost indices.

use onecircuit::data::generate_random_dataset;
use onecircuit::grad::{improved_run, ShiftRule, ShotPlan};
use onecircuit::stats::{chi_square_uniform, count_summary, pooled_chi_square};
use onecircuit::vqc::AnsatzConfig;

fn main() -> onecircuit::Result<()> {
    let data = generate_random_dataset(20, 8, 3)?;
    let config = AnsatzConfig::new(3, 1, vec![0.5; 6])?;
    let plan = ShotPlan::new(500, config.num_params())?;
    let run = improved_run(&data, &config, &ShiftRule::default(), &plan, 3)?;

    for (x, counts) in run.per_input_counts.iter().enumerate().take(5) {
        println!("input {x:>2}: {counts:?}");
    }
    println!("...");

    let all = run.per_input_counts.concat();
    let s = count_summary(&all);
    let big_n = plan.num_cost_functions() as f64;
    println!(
        "mean {:.1}, std {:.2} ({:.2}% of mean)",
        s.mean,
        s.std,
        100.0 * s.std_over_mean
    );
    println!(
        "multinomial std {:.2}",
        (500.0 * big_n * (1.0 / big_n) * (1.0 - 1.0 / big_n)).sqrt()
    );
    let pooled = pooled_chi_square(
        &run.per_input_counts
            .iter()
            .map(|c| chi_square_uniform(c))
            .collect::<Vec<_>>(),
    );
    println!(
        "pooled chi-square {:.1} on {} dof, p = {:.3}",
        pooled.statistic, pooled.dof, pooled.p_value
    );
    Ok(())
}
