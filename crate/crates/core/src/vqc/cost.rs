use crate::error::{Error, Result};

/// L1 distance between the outcome distribution `a` and one-hot(`label`).
/// Equals 2(1 − a[label]) for any distribution.
pub fn cost_from_distribution(a: &[f64], label: usize) -> Result<f64> {
    if label >= a.len() {
        return Err(Error::LabelOutOfRange {
            label,
            num_outcomes: a.len(),
        });
    }
    if a.iter().any(|p| !p.is_finite() || *p < -1e-12) {
        return Err(Error::NotADistribution(
            "negative or non-finite entry".into(),
        ));
    }
    let total: f64 = a.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::NotADistribution(format!("entries sum to {total}")));
    }
    Ok(a.iter()
        .enumerate()
        .map(|(k, p)| if k == label { (p - 1.0).abs() } else { p.abs() })
        .sum())
}
