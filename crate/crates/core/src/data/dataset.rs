use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::seeded;

/// Label given to every randomly generated input.
pub const RANDOM_LABEL: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DataSource {
    RandomUniform,
    IdxImage,
    /// Vectors supplied directly by the caller.
    Inline,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub inputs: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub source: DataSource,
}

impl Dataset {
    pub fn new(inputs: Vec<Vec<f64>>, labels: Vec<usize>, source: DataSource) -> Result<Self> {
        let Some(first) = inputs.first() else {
            return Err(Error::EmptyDataset);
        };
        if let Some(bad) = inputs.iter().find(|x| x.len() != first.len()) {
            return Err(Error::RaggedDataset(first.len(), bad.len()));
        }
        if labels.len() != inputs.len() {
            return Err(Error::InvalidConfig(format!(
                "{} inputs but {} labels",
                inputs.len(),
                labels.len()
            )));
        }
        Ok(Dataset {
            inputs,
            labels,
            source,
        })
    }

    pub fn random(m: usize, dim: usize, seed: u64) -> Result<Self> {
        generate_random_dataset(m, dim, seed)
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.inputs.first().map_or(0, Vec::len)
    }

    /// The first `m` inputs.
    pub fn take(&self, m: usize) -> Result<Self> {
        Dataset::new(
            self.inputs[..m.min(self.len())].to_vec(),
            self.labels[..m.min(self.len())].to_vec(),
            self.source,
        )
    }
}

/// `m` vectors of `dim` values uniform in [0, 1), all labelled [`RANDOM_LABEL`].
pub fn generate_random_dataset(m: usize, dim: usize, seed: u64) -> Result<Dataset> {
    if m == 0 {
        return Err(Error::EmptyDataset);
    }
    if dim == 0 {
        return Err(Error::EmptyInput);
    }
    let mut rng = seeded(seed, &[0xda7a]);
    let inputs = (0..m)
        .map(|_| (0..dim).map(|_| rng.random::<f64>()).collect())
        .collect();
    Dataset::new(inputs, vec![RANDOM_LABEL; m], DataSource::RandomUniform)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_dataset_shape_and_determinism() {
        let d = generate_random_dataset(20, 8, 3).unwrap();
        assert_eq!(d.len(), 20);
        assert!(d
            .inputs
            .iter()
            .all(|x| x.len() == 8 && x.iter().all(|v| (0.0..1.0).contains(v))));
        assert!(d.labels.iter().all(|&l| l == 2));
        assert_eq!(d, generate_random_dataset(20, 8, 3).unwrap());
        assert_ne!(d, generate_random_dataset(20, 8, 4).unwrap());
    }

    #[test]
    fn random_values_are_centered() {
        let d = generate_random_dataset(125, 80, 9).unwrap();
        let all: Vec<f64> = d.inputs.concat();
        let mean = all.iter().sum::<f64>() / all.len() as f64;
        assert!((0.45..=0.55).contains(&mean), "mean {mean}");
    }

    #[test]
    fn invalid_datasets_rejected() {
        assert!(generate_random_dataset(0, 8, 0).is_err());
        assert!(matches!(
            Dataset::new(
                vec![vec![1.0], vec![1.0, 2.0]],
                vec![0, 0],
                DataSource::RandomUniform
            ),
            Err(Error::RaggedDataset(1, 2))
        ));
    }
}
