//! Batch execution of seeded runs and the manifest that records them.
//!
//! Outputs live under `<out>/<method>/<label>/run_<index>/`, each holding
//! `metrics.csv`, `archive.json` and any `snapshot_<step>.json` files.
//! Both methods of a (label, run) pair draw from the same seed and stream,
//! so their initial populations are identical.

use std::path::{Path, PathBuf};

use melita_core::domains::{ToyMedia, VectorPair};
use melita_core::{run, Method, QdRng};
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::archive_file::{ArchiveFile, PayloadCodec};
use crate::config::{DomainConfig, ExperimentConfig, Label, RunSettings};
use crate::error::{HarnessError, Result};
use crate::metrics_file::write_series;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const METRICS_FILE: &str = "metrics.csv";
pub const ARCHIVE_FILE: &str = "archive.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunEntry {
    pub label: String,
    pub label_seed: u64,
    pub method: Method,
    pub run_index: u64,
    pub seed: u64,
    pub config_hash: String,
    /// Paths relative to the output directory.
    pub metrics_path: PathBuf,
    pub archive_path: PathBuf,
    pub snapshot_paths: Vec<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub library_version: String,
    pub complete: bool,
    /// The experiment as run, with `output_dir` normalised to `.`.
    pub config: ExperimentConfig,
    pub runs: Vec<RunEntry>,
}

impl Manifest {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| HarnessError::Json {
            path: path.to_path_buf(),
            source,
        })
    }

    fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serialises");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| HarnessError::io(path, e))
    }
}

/// Seed of run `run_index`: the base seed plus the index.
pub fn run_seed(base: u64, run_index: u64) -> u64 {
    base.wrapping_add(run_index)
}

/// The generator for one run: seeded with the run seed, on the label's
/// stream.
pub fn run_rng(seed: u64, label_seed: u64) -> QdRng {
    let mut rng = QdRng::seed_from_u64(seed);
    rng.set_stream(label_seed);
    rng
}

#[derive(Serialize)]
struct HashedRun<'a> {
    label: &'a str,
    label_seed: u64,
    method: Method,
    run_index: u64,
    seed: u64,
    settings: &'a RunSettings,
}

pub fn config_hash(label: &Label, method: Method, run_index: u64, seed: u64, settings: &RunSettings) -> String {
    let canonical = serde_json::to_string(&HashedRun {
        label: &label.name,
        label_seed: label.seed,
        method,
        run_index,
        seed,
        settings,
    })
    .expect("run config serialises");
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone)]
struct Job {
    label: Label,
    method: Method,
    run_index: u64,
}

pub fn run_dir(method: Method, label: &str, run_index: u64) -> PathBuf {
    PathBuf::from(method.name())
        .join(label)
        .join(format!("run_{run_index:03}"))
}

fn create_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).map_err(|e| HarnessError::io(path, e))
}

fn execute<D: PayloadCodec + Sync>(
    domain: &D,
    settings: &RunSettings,
    job: &Job,
    out: &Path,
) -> Result<RunEntry> {
    let seed = run_seed(settings.seed, job.run_index);
    let hash = config_hash(&job.label, job.method, job.run_index, seed, settings);
    let mut rng = run_rng(seed, job.label.seed);
    let record = run(domain, &settings.run_config(job.method), &mut rng)?;

    let rel = run_dir(job.method, &job.label.name, job.run_index);
    create_dir(&out.join(&rel))?;
    let metrics_path = rel.join(METRICS_FILE);
    write_series(&out.join(&metrics_path), &record.series)?;
    let archive_path = rel.join(ARCHIVE_FILE);
    ArchiveFile::from_archive(domain, &settings.domain, &record.archive, &hash).write(&out.join(&archive_path))?;
    let mut snapshot_paths = Vec::with_capacity(record.snapshots.len());
    for (step, snapshot) in &record.snapshots {
        let path = rel.join(format!("snapshot_{step:06}.json"));
        ArchiveFile::from_archive(domain, &settings.domain, snapshot, &hash).write(&out.join(&path))?;
        snapshot_paths.push(path);
    }
    Ok(RunEntry {
        label: job.label.name.clone(),
        label_seed: job.label.seed,
        method: job.method,
        run_index: job.run_index,
        seed,
        config_hash: hash,
        metrics_path,
        archive_path,
        snapshot_paths,
    })
}

fn execute_all<D: PayloadCodec + Sync>(
    domain: &D,
    settings: &RunSettings,
    jobs: &[Job],
    out: &Path,
) -> Vec<Result<RunEntry>> {
    jobs.par_iter().map(|job| execute(domain, settings, job, out)).collect()
}

/// Runs every label x method x run of `config`, writing outputs and the
/// manifest under `out`. On failure the manifest lists the runs that
/// finished and is marked incomplete.
pub fn run_experiment(config: &ExperimentConfig, out: &Path) -> Result<Manifest> {
    config.validate()?;
    create_dir(out)?;
    let runs = config.runs_per_method as u64;
    let mut jobs = Vec::new();
    for label in &config.labels {
        for &method in &config.methods {
            for run_index in 0..runs {
                jobs.push(Job {
                    label: label.clone(),
                    method,
                    run_index,
                });
            }
        }
    }

    let settings = &config.run;
    let results = match &settings.domain {
        DomainConfig::VectorPair(p) => execute_all(&VectorPair::new(*p), settings, &jobs, out),
        DomainConfig::ToyMedia(p) => execute_all(&ToyMedia::new(*p), settings, &jobs, out),
    };

    let mut entries = Vec::with_capacity(results.len());
    let mut first_error = None;
    for result in results {
        match result {
            Ok(entry) => entries.push(entry),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    let mut recorded = config.clone();
    recorded.output_dir = PathBuf::from(".");
    let manifest = Manifest {
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        complete: first_error.is_none(),
        config: recorded,
        runs: entries,
    };
    manifest.write(&out.join(MANIFEST_FILE))?;
    match first_error {
        Some(e) => Err(e),
        None => Ok(manifest),
    }
}

/// Re-runs the experiment recorded in a manifest into `out`.
pub fn replay(manifest_path: &Path, out: &Path) -> Result<Manifest> {
    let manifest = Manifest::read(manifest_path)?;
    run_experiment(&manifest.config, out)
}
