//! Quality-diversity search over multimodal solutions: a MAP-Elites
//! archive, vanilla MAP-Elites and MAP-Elites with Transverse Assessment
//! (MEliTA) steps, synthetic bimodal domains, and the evaluation
//! machinery used to compare the two.
//!
//! MEliTA differs from vanilla MAP-Elites in what happens after one
//! artefact of a parent is mutated: the new artefact is also paired with
//! the other modalities of every elite sharing its bin, and the fittest
//! pairing that can claim its cell is inserted. At most one cell changes
//! per step either way.

pub mod archive;
pub mod diversity;
pub mod domains;
pub mod error;
pub mod kmedoids;
pub mod metrics;
pub mod ranksum;
pub mod run;
pub mod selection;
pub mod solution;
pub mod step;

pub use archive::{Archive, Cell, CellStats, InsertOutcome};
pub use error::QdError;
pub use metrics::{archive_metrics, auc, MetricsSample};
pub use run::{run, run_observed, seed_archive, Method, OutcomeTally, RunConfig, RunRecord};
pub use selection::Selection;
pub use solution::{characterize, Artefact, Domain, Solution};
pub use step::{
    melita_step, melita_step_with, transverse_candidates, vanilla_step, StepOutcome, StepReport,
    Transverse,
};

/// The seeded generator every run uses; portable and stable across
/// platforms and crate versions.
pub type QdRng = rand_chacha::ChaCha8Rng;
