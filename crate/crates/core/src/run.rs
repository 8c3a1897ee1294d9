use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::archive::Archive;
use crate::error::QdError;
use crate::metrics::{archive_metrics, MetricsSample};
use crate::selection::Selection;
use crate::solution::{characterize, Domain};
use crate::step::{melita_step, vanilla_step, StepOutcome, StepReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[serde(alias = "vanilla")]
    MapElites,
    Melita,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::MapElites, Method::Melita];

    pub fn name(&self) -> &'static str {
        match self {
            Method::MapElites => "mapelites",
            Method::Melita => "melita",
        }
    }

    pub fn step<D: Domain, R: Rng + ?Sized>(
        &self,
        archive: &mut Archive<D::Payload>,
        domain: &D,
        selection: Selection,
        rng: &mut R,
    ) -> Result<StepReport, QdError> {
        match self {
            Method::MapElites => vanilla_step(archive, domain, selection, rng),
            Method::Melita => melita_step(archive, domain, selection, rng),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub method: Method,
    pub selection: Selection,
    pub init_count: usize,
    pub steps: usize,
    /// Steps between archive snapshots; 0 keeps only the final archive.
    pub snapshot_every: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            method: Method::Melita,
            selection: Selection::default(),
            init_count: 100,
            steps: 2000,
            snapshot_every: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OutcomeTally {
    pub inserted_empty: usize,
    pub replaced: usize,
    pub rejected: usize,
    pub offspring_invalid: usize,
    pub evaluations: usize,
}

impl OutcomeTally {
    fn record(&mut self, report: &StepReport) {
        self.evaluations += report.evaluations;
        match report.outcome {
            StepOutcome::InsertedEmpty { .. } => self.inserted_empty += 1,
            StepOutcome::Replaced { .. } => self.replaced += 1,
            StepOutcome::Rejected => self.rejected += 1,
            StepOutcome::OffspringInvalid => self.offspring_invalid += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord<P> {
    pub config: RunConfig,
    /// Archive state right after seeding.
    pub seeded: MetricsSample,
    /// One sample per step, taken after the step.
    pub series: Vec<MetricsSample>,
    pub snapshots: Vec<(u64, Archive<P>)>,
    pub archive: Archive<P>,
    pub tally: OutcomeTally,
}

/// Fills `archive` with up to `count` generated solutions, dropping any
/// that are unclassified. Returns the number of occupied cells.
pub fn seed_archive<D: Domain, R: Rng + ?Sized>(
    archive: &mut Archive<D::Payload>,
    domain: &D,
    count: usize,
    rng: &mut R,
) -> usize {
    for _ in 0..count {
        if let Some(solution) = characterize(domain, domain.generate(rng)) {
            archive.insert(solution);
        }
    }
    archive.len()
}

pub fn run<D: Domain, R: Rng + ?Sized>(
    domain: &D,
    config: &RunConfig,
    rng: &mut R,
) -> Result<RunRecord<D::Payload>, QdError> {
    run_observed(domain, config, rng, |_, _| {})
}

/// Like [`run`], calling `observe` with the archive and the step report
/// after every step.
pub fn run_observed<D, R, F>(
    domain: &D,
    config: &RunConfig,
    rng: &mut R,
    mut observe: F,
) -> Result<RunRecord<D::Payload>, QdError>
where
    D: Domain,
    R: Rng + ?Sized,
    F: FnMut(&Archive<D::Payload>, &StepReport),
{
    let mut archive = Archive::new(domain.axis_sizes().to_vec());
    seed_archive(&mut archive, domain, config.init_count, rng);
    let seeded = archive_metrics(&archive);
    let mut series = Vec::with_capacity(config.steps);
    let mut snapshots = Vec::new();
    let mut tally = OutcomeTally::default();
    for step in 1..=config.steps {
        let report = config
            .method
            .step(&mut archive, domain, config.selection, rng)?;
        tally.record(&report);
        observe(&archive, &report);
        series.push(archive_metrics(&archive));
        if config.snapshot_every > 0 && step % config.snapshot_every == 0 {
            snapshots.push((step as u64, archive.clone()));
        }
    }
    Ok(RunRecord {
        config: config.clone(),
        seeded,
        series,
        snapshots,
        archive,
        tally,
    })
}
