//! Summary statistics for shot-count histograms.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountSummary {
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub std_over_mean: f64,
    pub min: u64,
    pub max: u64,
}

pub fn count_summary(counts: &[u64]) -> CountSummary {
    let k = counts.len() as f64;
    let mean = counts.iter().sum::<u64>() as f64 / k;
    let var = counts
        .iter()
        .map(|&c| (c as f64 - mean).powi(2))
        .sum::<f64>()
        / k;
    CountSummary {
        mean,
        std: var.sqrt(),
        std_over_mean: var.sqrt() / mean,
        min: counts.iter().copied().min().unwrap_or(0),
        max: counts.iter().copied().max().unwrap_or(0),
    }
}

/// Pearson chi-square test of `counts` against the uniform distribution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

pub fn chi_square_uniform(counts: &[u64]) -> ChiSquareTest {
    let total: u64 = counts.iter().sum();
    let expected = vec![total as f64 / counts.len() as f64; counts.len()];
    chi_square(counts, &expected)
}

pub fn chi_square(counts: &[u64], expected: &[f64]) -> ChiSquareTest {
    let statistic: f64 = counts
        .iter()
        .zip(expected)
        .filter(|(_, &e)| e > 0.0)
        .map(|(&c, &e)| (c as f64 - e).powi(2) / e)
        .sum();
    let dof = expected
        .iter()
        .filter(|&&e| e > 0.0)
        .count()
        .saturating_sub(1)
        .max(1);
    let p_value = ChiSquared::new(dof as f64)
        .expect("positive dof")
        .sf(statistic);
    ChiSquareTest {
        statistic,
        dof,
        p_value,
    }
}

/// Combines independent tests by summing statistics and degrees of freedom.
pub fn pooled_chi_square(tests: &[ChiSquareTest]) -> ChiSquareTest {
    let statistic = tests.iter().map(|t| t.statistic).sum();
    let dof = tests.iter().map(|t| t.dof).sum::<usize>().max(1);
    let p_value = ChiSquared::new(dof as f64)
        .expect("positive dof")
        .sf(statistic);
    ChiSquareTest {
        statistic,
        dof,
        p_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_of_constant_counts() {
        let s = count_summary(&[5, 5, 5]);
        assert_eq!((s.mean, s.std, s.min, s.max), (5.0, 0.0, 5, 5));
    }

    #[test]
    fn chi_square_detects_skew() {
        assert!(chi_square_uniform(&[1000, 1010, 990, 1000]).p_value > 0.5);
        assert!(chi_square_uniform(&[1200, 900, 900, 1000]).p_value < 1e-6);
    }

    #[test]
    fn pooling_adds_dof() {
        let a = chi_square_uniform(&[10, 12, 8]);
        let pooled = pooled_chi_square(&[a.clone(), a.clone()]);
        assert_eq!(pooled.dof, 4);
        assert!((pooled.statistic - 2.0 * a.statistic).abs() < 1e-12);
    }
}
