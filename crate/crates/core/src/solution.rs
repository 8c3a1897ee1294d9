use std::fmt::Debug;

use rand::Rng;

/// One single-modality payload tagged with the modality it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct Artefact<P> {
    pub modality: usize,
    pub payload: P,
}

impl<P> Artefact<P> {
    pub fn new(modality: usize, payload: P) -> Self {
        Self { modality, payload }
    }
}

/// A multimodal solution: one artefact per modality, with its coherence
/// fitness and per-modality bin coordinates cached at construction.
///
/// The caches can only be filled through [`characterize`] or by the step
/// procedures, so they always agree with the domain's functions.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<P> {
    artefacts: Vec<Artefact<P>>,
    fitness: f64,
    coords: Vec<usize>,
}

impl<P> Solution<P> {
    pub(crate) fn from_parts(artefacts: Vec<Artefact<P>>, fitness: f64, coords: Vec<usize>) -> Self {
        debug_assert_eq!(artefacts.len(), coords.len());
        assert!(
            (0.0..=1.0).contains(&fitness),
            "coherence {fitness} outside [0, 1]"
        );
        Self {
            artefacts,
            fitness,
            coords,
        }
    }

    pub fn artefacts(&self) -> &[Artefact<P>] {
        &self.artefacts
    }

    pub fn artefact(&self, modality: usize) -> &Artefact<P> {
        &self.artefacts[modality]
    }

    pub fn fitness(&self) -> f64 {
        self.fitness
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn into_artefacts(self) -> Vec<Artefact<P>> {
        self.artefacts
    }
}

/// The pluggable bundle a multimodal search runs over: an initial generator,
/// one variation operator and one behaviour descriptor per modality, and a
/// coherence function scoring how well the modalities agree.
///
/// `describe` and `cohere` must be pure. `vary(m, ..)` must only return
/// artefacts of modality `m`.
pub trait Domain {
    type Payload: Clone + PartialEq + Debug;

    /// Number of bins along each modality's axis; its length is the
    /// modality count.
    fn axis_sizes(&self) -> &[usize];

    fn modality_count(&self) -> usize {
        self.axis_sizes().len()
    }

    /// Draws a fresh set of artefacts, one per modality, in modality order.
    fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Artefact<Self::Payload>>;

    /// Produces a new artefact of modality `modality` from `parent`, or
    /// `None` when the operator yields nothing usable.
    fn vary<R: Rng + ?Sized>(
        &self,
        modality: usize,
        parent: &Solution<Self::Payload>,
        rng: &mut R,
    ) -> Option<Artefact<Self::Payload>>;

    /// Bin index along `modality`'s axis, or `None` when unclassified.
    fn describe(&self, modality: usize, artefact: &Artefact<Self::Payload>) -> Option<usize>;

    /// Coherence between all modalities, in `[0, 1]`.
    fn cohere(&self, artefacts: &[Artefact<Self::Payload>]) -> f64;
}

/// Evaluates a full set of artefacts. Returns `None` when any modality is
/// unclassified; such solutions never enter the archive.
///
/// Panics if the artefacts are not exactly one per modality in order, or
/// if the domain reports a bin outside its axis.
pub fn characterize<D: Domain>(
    domain: &D,
    artefacts: Vec<Artefact<D::Payload>>,
) -> Option<Solution<D::Payload>> {
    let axes = domain.axis_sizes();
    assert_eq!(
        artefacts.len(),
        axes.len(),
        "expected one artefact per modality"
    );
    let mut coords = Vec::with_capacity(axes.len());
    for (m, artefact) in artefacts.iter().enumerate() {
        assert_eq!(artefact.modality, m, "artefacts must be ordered by modality");
        coords.push(checked_bin(domain, m, artefact)?);
    }
    let fitness = domain.cohere(&artefacts);
    Some(Solution::from_parts(artefacts, fitness, coords))
}

pub(crate) fn checked_bin<D: Domain>(
    domain: &D,
    modality: usize,
    artefact: &Artefact<D::Payload>,
) -> Option<usize> {
    let bin = domain.describe(modality, artefact)?;
    let size = domain.axis_sizes()[modality];
    assert!(bin < size, "bin {bin} outside axis {modality} of size {size}");
    Some(bin)
}
