use rayon::prelude::*;

use super::{encode_dataset, shifted_configs, GradientMode, GradientReport, ShiftRule};
use crate::data::Dataset;
use crate::error::Result;
use crate::vqc::{exact_cost, AnsatzConfig};

/// Exact dataset cost (1/m) Σ_x 2(1 − a_y(x)).
pub fn dataset_cost(dataset: &Dataset, config: &AnsatzConfig) -> Result<f64> {
    let encoded = encode_dataset(dataset, config)?;
    let m = encoded.len() as f64;
    encoded
        .iter()
        .map(|(input, label)| Ok(exact_cost(input, *label, config)? / m))
        .sum()
}

/// Exact costs in cost-index order.
pub fn exact_costs(dataset: &Dataset, config: &AnsatzConfig, rule: &ShiftRule) -> Result<Vec<f64>> {
    shifted_configs(config, rule)
        .par_iter()
        .map(|c| dataset_cost(dataset, c))
        .collect()
}

/// Parameter-shift gradients from exact (infinite-shot) costs.
pub fn exact_gradients(
    dataset: &Dataset,
    config: &AnsatzConfig,
    rule: &ShiftRule,
) -> Result<GradientReport> {
    let costs = exact_costs(dataset, config, rule)?;
    Ok(GradientReport {
        mode: GradientMode::Exact,
        config: config.clone(),
        gradients: rule.gradients(&costs),
        unshifted_cost: costs[0],
        per_index_shots: None,
        shots_planned: 0,
        seed: 0,
    })
}
