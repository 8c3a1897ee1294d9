//! Two 8-dimensional real vectors standing in for a text embedding and a
//! visual embedding. Coherence is their rescaled cosine similarity.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{bin4, MutationBranch, TEXT, VISUAL};
use crate::solution::{Artefact, Domain, Solution};

pub const DIM: usize = 8;
const MIN_NORM: f64 = 1e-9;
const NORM_THRESHOLDS: [f64; 3] = [1.0, 2.0, 3.0];
const ROUGHNESS_THRESHOLDS: [f64; 3] = [0.5, 1.0, 1.5];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorArtefact(pub [f64; DIM]);

impl VectorArtefact {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Mean absolute difference between consecutive components.
    pub fn roughness(&self) -> f64 {
        self.0.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>() / (DIM - 1) as f64
    }

    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut values = [0.0; DIM];
            for v in &mut values {
                *v = StandardNormal.sample(rng);
            }
            let candidate = VectorArtefact(values);
            if candidate.norm() >= MIN_NORM {
                return candidate;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VectorPairParams {
    /// Per-component standard deviation of the partial mutation.
    pub sigma: f64,
    pub full_mutation_rate: f64,
}

impl Default for VectorPairParams {
    fn default() -> Self {
        Self {
            sigma: 0.3,
            full_mutation_rate: 0.2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VectorPair {
    params: VectorPairParams,
    axes: [usize; 2],
}

impl Default for VectorPair {
    fn default() -> Self {
        Self::new(VectorPairParams::default())
    }
}

impl VectorPair {
    pub fn new(params: VectorPairParams) -> Self {
        assert!(params.sigma >= 0.0, "sigma must be non-negative");
        assert!(
            (0.0..=1.0).contains(&params.full_mutation_rate),
            "full mutation rate must be a probability"
        );
        Self {
            params,
            axes: [16, 16],
        }
    }

    pub fn params(&self) -> &VectorPairParams {
        &self.params
    }

    /// Mutates one vector: a fresh sample with the full-mutation
    /// probability, otherwise additive Gaussian noise.
    pub fn mutate<R: Rng + ?Sized>(
        &self,
        parent: &VectorArtefact,
        rng: &mut R,
    ) -> (VectorArtefact, MutationBranch) {
        if rng.gen_bool(self.params.full_mutation_rate) {
            return (VectorArtefact::sample(rng), MutationBranch::Full);
        }
        let noise = Normal::new(0.0, self.params.sigma).expect("sigma validated");
        loop {
            let mut values = parent.0;
            for v in &mut values {
                *v += noise.sample(rng);
            }
            let child = VectorArtefact(values);
            if child.norm() >= MIN_NORM {
                return (child, MutationBranch::Partial);
            }
        }
    }
}

/// Angle of the first two components, split into 16 sectors.
pub fn text_bin(t: &VectorArtefact) -> Option<usize> {
    if t.0[0] == 0.0 && t.0[1] == 0.0 {
        return None;
    }
    let theta = t.0[1].atan2(t.0[0]);
    let bin = (16.0 * (theta + PI) / (2.0 * PI)).floor() as usize;
    Some(bin.min(15))
}

/// Norm bin times four plus roughness bin.
pub fn visual_bin(v: &VectorArtefact) -> usize {
    4 * bin4(v.norm(), NORM_THRESHOLDS) + bin4(v.roughness(), ROUGHNESS_THRESHOLDS)
}

/// `(1 + cos(t, v)) / 2`. Panics on a zero vector.
pub fn coherence(t: &VectorArtefact, v: &VectorArtefact) -> f64 {
    let (nt, nv) = (t.norm(), v.norm());
    assert!(nt > 0.0 && nv > 0.0, "coherence of a zero vector");
    let dot: f64 = t.0.iter().zip(&v.0).map(|(a, b)| a * b).sum();
    ((1.0 + dot / (nt * nv)) / 2.0).clamp(0.0, 1.0)
}

impl Domain for VectorPair {
    type Payload = VectorArtefact;

    fn axis_sizes(&self) -> &[usize] {
        &self.axes
    }

    fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Artefact<VectorArtefact>> {
        let t = VectorArtefact::sample(rng);
        let v = VectorArtefact::sample(rng);
        vec![Artefact::new(TEXT, t), Artefact::new(VISUAL, v)]
    }

    fn vary<R: Rng + ?Sized>(
        &self,
        modality: usize,
        parent: &Solution<VectorArtefact>,
        rng: &mut R,
    ) -> Option<Artefact<VectorArtefact>> {
        let (child, _) = self.mutate(&parent.artefact(modality).payload, rng);
        Some(Artefact::new(modality, child))
    }

    fn describe(&self, modality: usize, artefact: &Artefact<VectorArtefact>) -> Option<usize> {
        match modality {
            TEXT => text_bin(&artefact.payload),
            VISUAL => Some(visual_bin(&artefact.payload)),
            _ => panic!("vector-pair domain has two modalities, got {modality}"),
        }
    }

    fn cohere(&self, artefacts: &[Artefact<VectorArtefact>]) -> f64 {
        coherence(&artefacts[TEXT].payload, &artefacts[VISUAL].payload)
    }
}
