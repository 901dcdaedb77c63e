//! Datasets, IDX image ingestion and report persistence.

mod dataset;
mod idx;
mod report;

pub use dataset::{generate_random_dataset, DataSource, Dataset, RANDOM_LABEL};
pub use idx::{
    load_idx_images, read_idx_images, read_idx_labels, write_idx_images, write_idx_labels,
    IdxImages,
};
pub use report::{load_report, persist_report, ReportFile, SCHEMA_VERSION};
