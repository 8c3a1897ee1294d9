//! One evolutionary cycle: vanilla MAP-Elites and MAP-Elites with
//! transverse assessment.

use rand::Rng;

use crate::archive::{Archive, InsertOutcome};
use crate::error::QdError;
use crate::selection::Selection;
use crate::solution::{checked_bin, Artefact, Domain, Solution};

#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    InsertedEmpty {
        coords: Vec<usize>,
    },
    Replaced {
        coords: Vec<usize>,
        old_fitness: f64,
        new_fitness: f64,
    },
    Rejected,
    /// The variation operator produced nothing, or the new artefact was
    /// unclassified.
    OffspringInvalid,
}

impl StepOutcome {
    /// The one cell this step modified, if any.
    pub fn modified_cell(&self) -> Option<&[usize]> {
        match self {
            StepOutcome::InsertedEmpty { coords } | StepOutcome::Replaced { coords, .. } => {
                Some(coords)
            }
            _ => None,
        }
    }

    fn from_insert(coords: Vec<usize>, outcome: InsertOutcome) -> Self {
        match outcome {
            InsertOutcome::InsertedEmpty => StepOutcome::InsertedEmpty { coords },
            InsertOutcome::Replaced {
                old_fitness,
                new_fitness,
            } => StepOutcome::Replaced {
                coords,
                old_fitness,
                new_fitness,
            },
            InsertOutcome::Rejected => StepOutcome::Rejected,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    pub parent_coords: Vec<usize>,
    pub mutated_modality: usize,
    /// Size of the ordered candidate list (1 for vanilla steps).
    pub candidate_count: usize,
    /// Coherence evaluations performed during the step.
    pub evaluations: usize,
    pub outcome: StepOutcome,
}

/// Whether MEliTA steps pair the new artefact with the rest of its row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Transverse {
    #[default]
    Enabled,
    Disabled,
}

/// A mutated artefact and the direct offspring built from it.
struct Offspring<P> {
    artefact: Artefact<P>,
    offspring: Solution<P>,
}

enum Proposal<P> {
    Invalid,
    Valid(Offspring<P>),
}

/// Shared front half of both steps: select a parent, pick a modality,
/// vary it and evaluate the direct offspring.
fn propose<D: Domain, R: Rng + ?Sized>(
    archive: &mut Archive<D::Payload>,
    domain: &D,
    selection: Selection,
    rng: &mut R,
) -> Result<(Vec<usize>, usize, Proposal<D::Payload>), QdError> {
    let parent_coords = selection.select(archive, rng)?;
    let parent = archive
        .elite(&parent_coords)
        .expect("selected cell is occupied")
        .clone();
    let modality = rng.gen_range(0..domain.modality_count());
    let Some(artefact) = domain.vary(modality, &parent, rng) else {
        return Ok((parent_coords, modality, Proposal::Invalid));
    };
    assert_eq!(
        artefact.modality, modality,
        "variation operator changed the artefact's modality"
    );
    let Some(bin) = checked_bin(domain, modality, &artefact) else {
        return Ok((parent_coords, modality, Proposal::Invalid));
    };
    let offspring = combine(domain, &parent, &artefact, bin);
    Ok((
        parent_coords,
        modality,
        Proposal::Valid(Offspring {
            artefact,
            offspring,
        }),
    ))
}

/// Swaps `artefact` into `host`, reusing the host's cached bins for every
/// other modality and recomputing only the coherence.
fn combine<D: Domain>(
    domain: &D,
    host: &Solution<D::Payload>,
    artefact: &Artefact<D::Payload>,
    bin: usize,
) -> Solution<D::Payload> {
    let m = artefact.modality;
    let mut artefacts = host.artefacts().to_vec();
    artefacts[m] = artefact.clone();
    let mut coords = host.coords().to_vec();
    coords[m] = bin;
    let fitness = domain.cohere(&artefacts);
    Solution::from_parts(artefacts, fitness, coords)
}

pub fn vanilla_step<D: Domain, R: Rng + ?Sized>(
    archive: &mut Archive<D::Payload>,
    domain: &D,
    selection: Selection,
    rng: &mut R,
) -> Result<StepReport, QdError> {
    let (parent_coords, modality, proposal) = propose(archive, domain, selection, rng)?;
    let Proposal::Valid(Offspring { offspring, .. }) = proposal else {
        return Ok(invalid_report(parent_coords, modality));
    };
    let target = offspring.coords().to_vec();
    let inserted = archive.insert(offspring);
    if inserted.changed() {
        archive.record_success(&parent_coords);
    }
    Ok(StepReport {
        parent_coords,
        mutated_modality: modality,
        candidate_count: 1,
        evaluations: 1,
        outcome: StepOutcome::from_insert(target, inserted),
    })
}

/// Pairs `artefact` with the other modalities of every elite in its row,
/// i.e. every elite whose bin on the artefact's axis equals `bin`.
///
/// `offspring` is the direct child built from the same artefact; a
/// candidate that is payload-identical to it is dropped.
pub fn transverse_candidates<D: Domain>(
    archive: &Archive<D::Payload>,
    domain: &D,
    artefact: &Artefact<D::Payload>,
    bin: usize,
    offspring: &Solution<D::Payload>,
) -> Vec<Solution<D::Payload>> {
    let m = artefact.modality;
    archive
        .elites()
        .filter(|elite| elite.coords()[m] == bin)
        .filter(|elite| {
            !elite
                .artefacts()
                .iter()
                .zip(offspring.artefacts())
                .enumerate()
                .all(|(j, (a, b))| j == m || a == b)
        })
        .map(|elite| combine(domain, elite, artefact, bin))
        .collect()
}

/// Orders the direct offspring and the transverse candidates into the
/// walk order: fitness descending, the offspring first among equals, then
/// ascending cell coordinates.
pub fn order_candidates<P>(
    offspring: Solution<P>,
    transverse: Vec<Solution<P>>,
) -> Vec<Solution<P>> {
    let mut list: Vec<(bool, Solution<P>)> = Vec::with_capacity(transverse.len() + 1);
    list.push((true, offspring));
    list.extend(transverse.into_iter().map(|s| (false, s)));
    list.sort_by(|(a_direct, a), (b_direct, b)| {
        b.fitness()
            .total_cmp(&a.fitness())
            .then_with(|| b_direct.cmp(a_direct))
            .then_with(|| a.coords().cmp(b.coords()))
    });
    list.into_iter().map(|(_, s)| s).collect()
}

pub fn melita_step<D: Domain, R: Rng + ?Sized>(
    archive: &mut Archive<D::Payload>,
    domain: &D,
    selection: Selection,
    rng: &mut R,
) -> Result<StepReport, QdError> {
    melita_step_with(archive, domain, selection, Transverse::Enabled, rng)
}

pub fn melita_step_with<D: Domain, R: Rng + ?Sized>(
    archive: &mut Archive<D::Payload>,
    domain: &D,
    selection: Selection,
    transverse: Transverse,
    rng: &mut R,
) -> Result<StepReport, QdError> {
    let (parent_coords, modality, proposal) = propose(archive, domain, selection, rng)?;
    let Proposal::Valid(Offspring {
        artefact,
        offspring,
    }) = proposal
    else {
        return Ok(invalid_report(parent_coords, modality));
    };
    let candidates = match transverse {
        Transverse::Enabled => {
            let bin = offspring.coords()[modality];
            transverse_candidates(archive, domain, &artefact, bin, &offspring)
        }
        Transverse::Disabled => Vec::new(),
    };
    let list = order_candidates(offspring, candidates);
    let candidate_count = list.len();

    let mut outcome = StepOutcome::Rejected;
    for candidate in list {
        if archive.would_accept(candidate.coords(), candidate.fitness()) {
            let target = candidate.coords().to_vec();
            let inserted = archive.insert(candidate);
            debug_assert!(inserted.changed());
            outcome = StepOutcome::from_insert(target, inserted);
            break;
        }
    }
    if outcome.modified_cell().is_some() {
        archive.record_success(&parent_coords);
    }
    Ok(StepReport {
        parent_coords,
        mutated_modality: modality,
        candidate_count,
        evaluations: candidate_count,
        outcome,
    })
}

fn invalid_report(parent_coords: Vec<usize>, modality: usize) -> StepReport {
    StepReport {
        parent_coords,
        mutated_modality: modality,
        candidate_count: 0,
        evaluations: 0,
        outcome: StepOutcome::OffspringInvalid,
    }
}
