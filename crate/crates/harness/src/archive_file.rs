//! JSON archive files.
//!
//! ```json
//! {
//!   "config_hash": "…",
//!   "domain": { "name": "vector-pair", "sigma": 0.3, "full_mutation_rate": 0.2 },
//!   "axis_sizes": [16, 16],
//!   "cells": [
//!     { "coords": [8, 4], "fitness": 0.93, "birth_step": 117,
//!       "artefacts": [ { "modality": 0, "payload": [..] }, { "modality": 1, "payload": [..] } ] }
//!   ]
//! }
//! ```
//!
//! Payloads are flat arrays: eight floats per vector, interleaved RGB
//! floats in row-major pixel order per image, integer token ids per text.

use std::path::Path;

use melita_core::domains::{ToyImage, ToyMedia, ToyPayload, ToyText, VectorArtefact, VectorPair};
use melita_core::{characterize, Archive, Artefact, Domain};
use serde::{Deserialize, Serialize};

use crate::config::DomainConfig;
use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Tokens(Vec<u8>),
    Values(Vec<f64>),
}

impl Payload {
    /// Numeric view of either encoding.
    pub fn values(&self) -> Vec<f64> {
        match self {
            Payload::Tokens(t) => t.iter().map(|&x| f64::from(x)).collect(),
            Payload::Values(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArtefactRecord {
    pub modality: usize,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellRecord {
    pub coords: Vec<usize>,
    pub fitness: f64,
    pub birth_step: u64,
    pub artefacts: Vec<ArtefactRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArchiveFile {
    pub config_hash: String,
    pub domain: DomainConfig,
    pub axis_sizes: Vec<usize>,
    pub cells: Vec<CellRecord>,
}

/// Payload encoding for a domain.
pub trait PayloadCodec: Domain {
    fn encode(&self, artefact: &Artefact<Self::Payload>) -> Payload;
    fn decode(&self, modality: usize, payload: &Payload) -> Result<Self::Payload>;
}

impl PayloadCodec for VectorPair {
    fn encode(&self, artefact: &Artefact<VectorArtefact>) -> Payload {
        Payload::Values(artefact.payload.0.to_vec())
    }

    fn decode(&self, _modality: usize, payload: &Payload) -> Result<VectorArtefact> {
        let values = payload.values();
        let array: [f64; 8] = values
            .try_into()
            .map_err(|v: Vec<f64>| HarnessError::Archive(format!("vector payload has {} values, expected 8", v.len())))?;
        Ok(VectorArtefact(array))
    }
}

impl PayloadCodec for ToyMedia {
    fn encode(&self, artefact: &Artefact<ToyPayload>) -> Payload {
        match &artefact.payload {
            ToyPayload::Text(t) => Payload::Tokens(t.tokens().to_vec()),
            ToyPayload::Image(img) => Payload::Values(img.to_flat()),
        }
    }

    fn decode(&self, modality: usize, payload: &Payload) -> Result<ToyPayload> {
        use melita_core::domains::text::{MAX_LEN, MIN_LEN, VOCAB};
        match (modality, payload) {
            (melita_core::domains::TEXT, Payload::Tokens(tokens)) => {
                if !(MIN_LEN..=MAX_LEN).contains(&tokens.len()) || tokens.iter().any(|&t| t as usize >= VOCAB) {
                    return Err(HarnessError::Archive("malformed token text".into()));
                }
                Ok(ToyPayload::Text(ToyText::new(tokens.clone())))
            }
            (melita_core::domains::VISUAL, payload) => {
                let p = self.params();
                let flat = payload.values();
                if flat.len() != p.width * p.height * 3 || flat.iter().any(|c| !(0.0..=1.0).contains(c)) {
                    return Err(HarnessError::Archive(format!(
                        "image payload does not describe a {}x{} RGB image",
                        p.width, p.height
                    )));
                }
                Ok(ToyPayload::Image(ToyImage::from_flat(p.width, p.height, &flat)))
            }
            _ => Err(HarnessError::Archive(format!("unexpected payload for modality {modality}"))),
        }
    }
}

impl ArchiveFile {
    pub fn from_archive<D: PayloadCodec>(
        domain: &D,
        domain_config: &DomainConfig,
        archive: &Archive<D::Payload>,
        config_hash: &str,
    ) -> Self {
        let cells = archive
            .iter()
            .map(|(coords, cell)| CellRecord {
                coords: coords.to_vec(),
                fitness: cell.elite.fitness(),
                birth_step: cell.birth_step,
                artefacts: cell
                    .elite
                    .artefacts()
                    .iter()
                    .map(|a| ArtefactRecord {
                        modality: a.modality,
                        payload: domain.encode(a),
                    })
                    .collect(),
            })
            .collect();
        Self {
            config_hash: config_hash.to_string(),
            domain: domain_config.clone(),
            axis_sizes: archive.axis_sizes().to_vec(),
            cells,
        }
    }

    /// Rebuilds the archive by re-evaluating every stored elite, failing if
    /// a stored fitness or cell disagrees with the domain.
    pub fn to_archive<D: PayloadCodec>(&self, domain: &D) -> Result<Archive<D::Payload>> {
        if self.axis_sizes != domain.axis_sizes() {
            return Err(HarnessError::Archive("axis sizes do not match the domain".into()));
        }
        let mut cells = Vec::with_capacity(self.cells.len());
        for (i, cell) in self.cells.iter().enumerate() {
            let artefacts = cell
                .artefacts
                .iter()
                .enumerate()
                .map(|(m, a)| {
                    if a.modality != m {
                        return Err(HarnessError::Archive(format!("cell {i}: artefacts out of modality order")));
                    }
                    Ok(Artefact::new(m, domain.decode(m, &a.payload)?))
                })
                .collect::<Result<Vec<_>>>()?;
            if artefacts.len() != domain.modality_count() {
                return Err(HarnessError::Archive(format!("cell {i}: wrong artefact count")));
            }
            let elite = characterize(domain, artefacts)
                .ok_or_else(|| HarnessError::Archive(format!("cell {i}: elite is unclassified")))?;
            if elite.coords() != cell.coords.as_slice() || elite.fitness() != cell.fitness {
                return Err(HarnessError::Archive(format!(
                    "cell {i}: stored coords/fitness disagree with re-evaluation"
                )));
            }
            if self.cells[..i].iter().any(|c| c.coords == cell.coords) {
                return Err(HarnessError::Archive(format!("cell {i}: duplicate coordinates")));
            }
            cells.push((elite, cell.birth_step));
        }
        Ok(Archive::restore(self.axis_sizes.clone(), cells))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("archive serialises");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| HarnessError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| HarnessError::Json {
            path: path.to_path_buf(),
            source,
        })
    }
}
