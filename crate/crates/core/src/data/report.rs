//! JSON form of a [`GradientReport`]:
//!
//! ```json
//! {"schema": 1, "mode": "improved", "config": {"Q": 3, "reps": 1, "theta": [..]},
//!  "shots_planned": 6500, "gradients": [..], "unshifted_cost": 1.2,
//!  "per_index_shots": [..] | null, "seed": 7}
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grad::{GradientMode, GradientReport};
use crate::vqc::AnsatzConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportConfig {
    #[serde(rename = "Q")]
    pub num_qubits: usize,
    pub reps: usize,
    pub theta: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema: u32,
    pub mode: GradientMode,
    pub config: ReportConfig,
    pub shots_planned: u64,
    pub gradients: Vec<f64>,
    pub unshifted_cost: f64,
    pub per_index_shots: Option<Vec<u64>>,
    pub seed: u64,
}

impl From<&GradientReport> for ReportFile {
    fn from(r: &GradientReport) -> Self {
        ReportFile {
            schema: SCHEMA_VERSION,
            mode: r.mode,
            config: ReportConfig {
                num_qubits: r.config.num_qubits,
                reps: r.config.reps,
                theta: r.config.theta.clone(),
            },
            shots_planned: r.shots_planned,
            gradients: r.gradients.clone(),
            unshifted_cost: r.unshifted_cost,
            per_index_shots: r.per_index_shots.clone(),
            seed: r.seed,
        }
    }
}

impl TryFrom<ReportFile> for GradientReport {
    type Error = Error;

    fn try_from(f: ReportFile) -> Result<Self> {
        let config = AnsatzConfig::new(f.config.num_qubits, f.config.reps, f.config.theta)?;
        Ok(GradientReport {
            mode: f.mode,
            config,
            gradients: f.gradients,
            unshifted_cost: f.unshifted_cost,
            per_index_shots: f.per_index_shots,
            shots_planned: f.shots_planned,
            seed: f.seed,
        })
    }
}

impl GradientReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ReportFile::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        match value.get("schema").and_then(serde_json::Value::as_u64) {
            Some(v) if v == SCHEMA_VERSION as u64 => {}
            Some(v) => {
                return Err(Error::SchemaVersion {
                    expected: SCHEMA_VERSION,
                    found: v,
                })
            }
            None => return Err(Error::Schema("missing field `schema`".into())),
        }
        let file: ReportFile =
            serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
        file.try_into()
    }
}

pub fn persist_report(report: &GradientReport, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, report.to_json()? + "\n")?;
    Ok(())
}

pub fn load_report(path: impl AsRef<Path>) -> Result<GradientReport> {
    GradientReport::from_json(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> GradientReport {
        GradientReport {
            mode: GradientMode::Improved,
            config: AnsatzConfig::new(1, 1, vec![0.1, 2.0 / 3.0]).unwrap(),
            gradients: vec![-0.123_456_789_012_345_68, 1e-300],
            unshifted_cost: 1.0 / 7.0,
            per_index_shots: Some(vec![3, 4, 5, 6, 7]),
            shots_planned: 25,
            seed: u64::MAX,
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        persist_report(&sample(), &path).unwrap();
        assert_eq!(load_report(&path).unwrap(), sample());
    }

    #[test]
    fn missing_mode_is_named() {
        let mut v: serde_json::Value = serde_json::from_str(&sample().to_json().unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("mode");
        let err = GradientReport::from_json(&v.to_string()).unwrap_err();
        assert!(
            matches!(&err, Error::Schema(m) if m.contains("mode")),
            "{err}"
        );
    }

    #[test]
    fn schema_version_checked() {
        let text = sample()
            .to_json()
            .unwrap()
            .replacen("\"schema\": 1", "\"schema\": 2", 1);
        assert!(matches!(
            GradientReport::from_json(&text),
            Err(Error::SchemaVersion { found: 2, .. })
        ));
    }

    #[test]
    fn null_shot_counts() {
        let mut r = sample();
        r.mode = GradientMode::Exact;
        r.per_index_shots = None;
        let text = r.to_json().unwrap();
        assert!(text.contains("\"per_index_shots\": null"));
        assert_eq!(GradientReport::from_json(&text).unwrap(), r);
    }

    proptest! {
        #[test]
        fn floats_round_trip_exactly(
            g in proptest::collection::vec(-1e3f64..1e3, 2),
            cost in 0.0f64..2.0,
            theta in proptest::collection::vec(-10.0f64..10.0, 2),
        ) {
            let mut r = sample();
            r.gradients = g;
            r.unshifted_cost = cost;
            r.config.theta = theta;
            prop_assert_eq!(GradientReport::from_json(&r.to_json().unwrap()).unwrap(), r);
        }
    }
}
