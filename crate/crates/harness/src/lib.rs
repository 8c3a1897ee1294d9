//! Experiment harness for the MEliTA core library: TOML-configured batches
//! of seeded runs, CSV and JSON outputs, and the analysis commands that read
//! them back.

pub mod analysis;
pub mod archive_file;
pub mod compare;
pub mod config;
pub mod error;
pub mod experiment;
pub mod metrics_file;

pub use error::{HarnessError, Result};

use melita_core::domains::toy_media::{COHERENCE_MATRIX, FEATURES, MATRIX_SEED};
use melita_core::domains::text::{TOPICS, VOCAB};
use melita_core::domains::TopicModel;
use serde::Serialize;

/// The fixed numeric constants of the toy-media domain, for external
/// inspection.
#[derive(Debug, Serialize)]
pub struct DomainConstants {
    pub matrix_seed: u64,
    pub features: usize,
    pub coherence_matrix: Vec<Vec<f64>>,
    pub vocab: usize,
    pub topics: usize,
    pub topic_rows: Vec<Vec<f64>>,
}

pub fn domain_constants() -> DomainConstants {
    let model = TopicModel;
    DomainConstants {
        matrix_seed: MATRIX_SEED,
        features: FEATURES,
        coherence_matrix: COHERENCE_MATRIX.iter().map(|r| r.to_vec()).collect(),
        vocab: VOCAB,
        topics: TOPICS,
        topic_rows: (0..TOPICS).map(|k| model.row(k).to_vec()).collect(),
    }
}
