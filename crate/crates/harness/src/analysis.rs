//! Diversity and exemplar analysis over archive files.

use melita_core::diversity::{diversity, euclidean};
use melita_core::domains::TopicModel;
use melita_core::kmedoids::k_medoids;
use melita_core::QdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::archive_file::{ArchiveFile, Payload};
use crate::error::{HarnessError, Result};

pub const DISTANCES: [&str; 2] = ["euclidean", "topic"];

/// Euclidean distance between two payloads' flat numeric values.
pub fn euclidean_payload(a: &Payload, b: &Payload) -> Result<f64> {
    let (a, b) = (a.values(), b.values());
    if a.len() != b.len() {
        return Err(HarnessError::Archive("payloads differ in length".into()));
    }
    Ok(euclidean(&a, &b))
}

/// Euclidean distance between the topic posteriors of two token texts.
pub fn topic_payload(a: &Payload, b: &Payload) -> Result<f64> {
    match (a, b) {
        (Payload::Tokens(a), Payload::Tokens(b)) => {
            let model = TopicModel;
            Ok(euclidean(&model.posterior(a), &model.posterior(b)))
        }
        _ => Err(HarnessError::Archive("topic distance needs token payloads".into())),
    }
}

type PayloadDistance = fn(&Payload, &Payload) -> Result<f64>;

pub fn distance_by_name(name: &str) -> Result<PayloadDistance> {
    match name {
        "euclidean" => Ok(euclidean_payload),
        "topic" => Ok(topic_payload),
        _ => Err(HarnessError::UnknownDistance {
            name: name.to_string(),
            available: DISTANCES.join(", "),
        }),
    }
}

/// The distance used for a modality when none is named: topic distance for
/// token texts, Euclidean otherwise.
pub fn default_distance(sample: &Payload) -> PayloadDistance {
    match sample {
        Payload::Tokens(_) => topic_payload,
        Payload::Values(_) => euclidean_payload,
    }
}

/// Pairwise distances, computed once and checked for payload errors.
fn matrix(items: &[&Payload], distance: PayloadDistance) -> Result<Vec<Vec<f64>>> {
    let n = items.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[i][j] = distance(items[i], items[j])?;
            }
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiversityOutput {
    pub modality: usize,
    pub distance: String,
    pub coords: Vec<Vec<usize>>,
    pub mean_distance: Vec<f64>,
    pub nearest_neighbour: Vec<f64>,
    pub archive_mean_distance: f64,
    pub archive_nearest_neighbour: f64,
    pub single_elite: bool,
}

pub fn analyze_diversity(archive: &ArchiveFile, modality: usize, distance: &str) -> Result<DiversityOutput> {
    let dist = distance_by_name(distance)?;
    if archive.cells.is_empty() {
        return Err(HarnessError::NoElites);
    }
    let payloads = modality_payloads(archive, modality)?;
    let m = matrix(&payloads, dist)?;
    let indices: Vec<usize> = (0..payloads.len()).collect();
    let report = diversity(&indices, |&i, &j| m[i][j])?;
    Ok(DiversityOutput {
        modality,
        distance: distance.to_string(),
        coords: archive.cells.iter().map(|c| c.coords.clone()).collect(),
        mean_distance: report.mean_distance,
        nearest_neighbour: report.nearest_neighbour,
        archive_mean_distance: report.archive_mean_distance,
        archive_nearest_neighbour: report.archive_nearest_neighbour,
        single_elite: report.single_elite,
    })
}

fn modality_payloads(archive: &ArchiveFile, modality: usize) -> Result<Vec<&Payload>> {
    archive
        .cells
        .iter()
        .map(|c| {
            c.artefacts
                .iter()
                .find(|a| a.modality == modality)
                .map(|a| &a.payload)
                .ok_or_else(|| HarnessError::Archive(format!("cell {:?} has no modality {modality}", c.coords)))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exemplar {
    pub coords: Vec<usize>,
    pub fitness: f64,
    pub cluster_size: usize,
    pub members: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MedoidsOutput {
    pub k: usize,
    pub weights: Vec<f64>,
    pub cost: f64,
    pub exemplars: Vec<Exemplar>,
}

/// k-medoids over elites with the combined distance
/// `sqrt(sum_m w_m d_m^2)`, where `d_m` is modality `m`'s default distance.
pub fn medoids(archive: &ArchiveFile, k: usize, weights: Option<&[f64]>, seed: u64) -> Result<MedoidsOutput> {
    let n = archive.cells.len();
    if n == 0 {
        return Err(HarnessError::NoElites);
    }
    if k == 0 || k > n {
        return Err(HarnessError::Core(melita_core::QdError::InvalidClusterCount { k, n }));
    }
    let modalities = archive.axis_sizes.len();
    let weights = match weights {
        Some(w) if w.len() != modalities => {
            return Err(HarnessError::invalid("weights", format!("expected {modalities} weights, got {}", w.len())))
        }
        Some(w) if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) => {
            return Err(HarnessError::invalid("weights", "weights must be finite and >= 0"))
        }
        Some(w) => w.to_vec(),
        None => vec![1.0; modalities],
    };
    let mut combined = vec![vec![0.0; n]; n];
    for (m, &w) in weights.iter().enumerate() {
        let payloads = modality_payloads(archive, m)?;
        let part = matrix(&payloads, default_distance(payloads[0]))?;
        for i in 0..n {
            for j in 0..n {
                combined[i][j] += w * part[i][j] * part[i][j];
            }
        }
    }
    let indices: Vec<usize> = (0..n).collect();
    let mut rng = QdRng::seed_from_u64(seed);
    let clustering = k_medoids(&indices, |&i, &j| combined[i][j].sqrt(), k, &mut rng)?;
    let sizes = clustering.cluster_sizes();
    let exemplars = clustering
        .medoids
        .iter()
        .enumerate()
        .map(|(slot, &i)| Exemplar {
            coords: archive.cells[i].coords.clone(),
            fitness: archive.cells[i].fitness,
            cluster_size: sizes[slot],
            members: clustering
                .labels
                .iter()
                .enumerate()
                .filter(|(_, &l)| l == slot)
                .map(|(j, _)| archive.cells[j].coords.clone())
                .collect(),
        })
        .collect();
    Ok(MedoidsOutput {
        k,
        weights,
        cost: clustering.cost,
        exemplars,
    })
}
