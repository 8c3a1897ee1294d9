#![allow(dead_code)]

use std::collections::HashMap;

use melita_core::{characterize, Archive, Artefact, Domain, Solution};
use rand::Rng;

/// Payload of the scripted domain: its bin and an identity used to look
/// up coherence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tag {
    pub bin: usize,
    pub id: u32,
}

pub fn tag(bin: usize, id: u32) -> Tag {
    Tag { bin, id }
}

/// Two-modality domain whose coherence is a lookup table over
/// (text id, visual id) and whose variation returns a fixed artefact per
/// modality.
pub struct Scripted {
    pub coherence: HashMap<(u32, u32), f64>,
    pub default_coherence: f64,
    pub mutation: [Tag; 2],
    pub axes: [usize; 2],
}

impl Scripted {
    pub fn new(mutation: [Tag; 2]) -> Self {
        Self {
            coherence: HashMap::new(),
            default_coherence: 0.1,
            mutation,
            axes: [16, 16],
        }
    }

    pub fn with(mut self, text: u32, visual: u32, q: f64) -> Self {
        self.coherence.insert((text, visual), q);
        self
    }

    pub fn solution(&self, text: Tag, visual: Tag) -> Solution<Tag> {
        characterize(self, vec![Artefact::new(0, text), Artefact::new(1, visual)]).unwrap()
    }
}

impl Domain for Scripted {
    type Payload = Tag;

    fn axis_sizes(&self) -> &[usize] {
        &self.axes
    }

    fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Artefact<Tag>> {
        let t = tag(rng.gen_range(0..16), rng.gen());
        let v = tag(rng.gen_range(0..16), rng.gen());
        vec![Artefact::new(0, t), Artefact::new(1, v)]
    }

    fn vary<R: Rng + ?Sized>(&self, m: usize, _: &Solution<Tag>, _: &mut R) -> Option<Artefact<Tag>> {
        Some(Artefact::new(m, self.mutation[m]))
    }

    fn describe(&self, _: usize, a: &Artefact<Tag>) -> Option<usize> {
        Some(a.payload.bin)
    }

    fn cohere(&self, a: &[Artefact<Tag>]) -> f64 {
        *self
            .coherence
            .get(&(a[0].payload.id, a[1].payload.id))
            .unwrap_or(&self.default_coherence)
    }
}

/// Builds an archive from solutions, asserting each lands in an empty cell.
pub fn archive_of<P: Clone>(axes: Vec<usize>, elites: Vec<Solution<P>>) -> Archive<P> {
    let mut archive = Archive::new(axes);
    for e in elites {
        assert!(archive.insert(e).changed());
    }
    archive
}
