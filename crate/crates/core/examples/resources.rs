//! Depth and width of both approaches across a grid of ansatz sizes.

use onecircuit::resources::{lambda_asymptote, model_resources};
use onecircuit::vqc::{default_feature_map_depth, num_params, AnsatzConfig};

fn main() -> onecircuit::Result<()> {
    println!(
        "{:>2} {:>2} {:>3} {:>6} {:>7} {:>7} {:>6} {:>6}",
        "Q", "r", "n", "Lambda", "D_conv", "D_impr", "N_conv", "N_impr"
    );
    for q in 1..=5 {
        for reps in 0..=3 {
            let config = AnsatzConfig::new(q, reps, vec![0.0; num_params(q, reps)])?;
            let r = model_resources(&config, default_feature_map_depth(q))?;
            assert!(r.all_ok());
            println!(
                "{:>2} {:>2} {:>3} {:>6} {:>7} {:>7} {:>6} {:>6}",
                q,
                reps,
                r.n,
                r.base_depth,
                r.conventional_depth,
                r.improved_depth,
                r.conventional_clbits,
                r.improved_clbits
            );
        }
    }

    let config = AnsatzConfig::new(4, 1, vec![0.0; num_params(4, 1)])?;
    let r = model_resources(&config, default_feature_map_depth(4))?;
    let series = lambda_asymptote(
        r.rep_depth as f64,
        4,
        r.fixed_depth as f64,
        &[4, 8, 40, 400, 4000],
    )?;
    println!(
        "lambda for Q=4 as n grows: {:?} -> {:.3}",
        series.values, series.limit
    );
    Ok(())
}
