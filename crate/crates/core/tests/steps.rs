mod common;

use common::{archive_of, tag, Scripted, Tag};
use melita_core::domains::{VectorArtefact, VectorPair};
use melita_core::{
    characterize, melita_step, transverse_candidates, vanilla_step, Archive, Artefact, Domain,
    QdError, QdRng, Selection, StepOutcome, StepReport,
};
use rand::SeedableRng;

const TEXT: usize = 0;
const VISUAL: usize = 1;

/// Runs `step` from successive seeds until the parent at `parent` mutates
/// `modality`, returning the resulting archive and report.
fn step_where<F>(
    archive: &Archive<Tag>,
    parent: [usize; 2],
    modality: usize,
    mut step: F,
) -> (Archive<Tag>, StepReport)
where
    F: FnMut(&mut Archive<Tag>, &mut QdRng) -> StepReport,
{
    for seed in 0..1_000 {
        let mut a = archive.clone();
        let report = step(&mut a, &mut QdRng::seed_from_u64(seed));
        if report.parent_coords == parent && report.mutated_modality == modality {
            return (a, report);
        }
    }
    panic!("no seed selected the requested parent and modality");
}

// E sits at (text 5, visual 3); its image mutates into visual bin 0, a row
// holding R1 at (2, 0) and R2 at (9, 0). E' lands on the empty cell (5, 0).
const E_TEXT: Tag = Tag { bin: 5, id: 1 };
const E_IMAGE: Tag = Tag { bin: 3, id: 2 };
const NEW_IMAGE: Tag = Tag { bin: 0, id: 3 };
const R1_TEXT: Tag = Tag { bin: 2, id: 10 };
const R1_IMAGE: Tag = Tag { bin: 0, id: 11 };
const R2_TEXT: Tag = Tag { bin: 9, id: 20 };
const R2_IMAGE: Tag = Tag { bin: 0, id: 21 };

fn figure_domain(q_r1_new: f64, q_e_new: f64, q_r2_new: f64) -> Scripted {
    Scripted::new([tag(5, 99), NEW_IMAGE])
        .with(E_TEXT.id, E_IMAGE.id, 0.5)
        .with(R1_TEXT.id, R1_IMAGE.id, 0.6)
        .with(R2_TEXT.id, R2_IMAGE.id, 0.4)
        .with(E_TEXT.id, NEW_IMAGE.id, q_e_new)
        .with(R1_TEXT.id, NEW_IMAGE.id, q_r1_new)
        .with(R2_TEXT.id, NEW_IMAGE.id, q_r2_new)
}

fn figure_archive(d: &Scripted) -> Archive<Tag> {
    archive_of(
        vec![16, 16],
        vec![
            d.solution(E_TEXT, E_IMAGE),
            d.solution(R1_TEXT, R1_IMAGE),
            d.solution(R2_TEXT, R2_IMAGE),
        ],
    )
}

#[test]
fn fittest_transverse_candidate_replaces_its_row_elite() {
    // L = {R2', E', R1'} and q(R2') > q(R2)
    let d = figure_domain(0.3, 0.45, 0.7);
    let before = figure_archive(&d);
    let (after, report) = step_where(&before, [5, 3], VISUAL, |a, rng| {
        melita_step(a, &d, Selection::Uniform, rng).unwrap()
    });
    assert_eq!(
        report.outcome,
        StepOutcome::Replaced {
            coords: vec![9, 0],
            old_fitness: 0.4,
            new_fitness: 0.7
        }
    );
    assert_eq!(report.candidate_count, 3);
    assert_eq!(report.evaluations, 3);
    assert!(after.get(&[5, 0]).is_none());
    let r2 = after.elite(&[9, 0]).unwrap();
    assert_eq!(r2.artefact(TEXT).payload, R2_TEXT);
    assert_eq!(r2.artefact(VISUAL).payload, NEW_IMAGE);
    assert_eq!(after.len(), before.len());
}

#[test]
fn direct_offspring_fills_empty_cell_when_no_pairing_wins() {
    // q(R2') <= q(R2) and q(R1') <= q(R1), even though both outrank E'
    let d = figure_domain(0.6, 0.2, 0.4);
    let before = figure_archive(&d);
    let (after, report) = step_where(&before, [5, 3], VISUAL, |a, rng| {
        melita_step(a, &d, Selection::Uniform, rng).unwrap()
    });
    assert_eq!(report.outcome, StepOutcome::InsertedEmpty { coords: vec![5, 0] });
    let e = after.elite(&[5, 0]).unwrap();
    assert_eq!(e.artefact(TEXT).payload, E_TEXT);
    assert_eq!(e.artefact(VISUAL).payload, NEW_IMAGE);
    assert_eq!(after.elite(&[9, 0]), before.elite(&[9, 0]));
    assert_eq!(after.elite(&[2, 0]), before.elite(&[2, 0]));
    assert_eq!(after.get(&[5, 3]).unwrap().stats.offspring_inserted, 1);
}

#[test]
fn vanilla_ignores_the_row() {
    let d = figure_domain(0.3, 0.45, 0.7);
    let before = figure_archive(&d);
    let (after, report) = step_where(&before, [5, 3], VISUAL, |a, rng| {
        vanilla_step(a, &d, Selection::Uniform, rng).unwrap()
    });
    assert_eq!(report.outcome, StepOutcome::InsertedEmpty { coords: vec![5, 0] });
    assert_eq!(report.evaluations, 1);
    assert_eq!(after.elite(&[9, 0]), before.elite(&[9, 0]));
}

#[test]
fn vanilla_replaces_own_cell_when_fitter() {
    // text mutation keeps text bin 5 and image bin 3: E' targets E's cell
    let d = Scripted::new([tag(5, 7), NEW_IMAGE])
        .with(E_TEXT.id, E_IMAGE.id, 0.6)
        .with(7, E_IMAGE.id, 0.7);
    let before = archive_of(vec![16, 16], vec![d.solution(E_TEXT, E_IMAGE)]);
    let (_, report) = step_where(&before, [5, 3], TEXT, |a, rng| {
        vanilla_step(a, &d, Selection::Uniform, rng).unwrap()
    });
    assert_eq!(
        report.outcome,
        StepOutcome::Replaced {
            coords: vec![5, 3],
            old_fitness: 0.6,
            new_fitness: 0.7
        }
    );
}

#[test]
fn vanilla_fills_empty_cell_regardless_of_parent_fitness() {
    let d = Scripted::new([tag(6, 7), NEW_IMAGE])
        .with(E_TEXT.id, E_IMAGE.id, 0.9)
        .with(7, E_IMAGE.id, 0.05);
    let before = archive_of(vec![16, 16], vec![d.solution(E_TEXT, E_IMAGE)]);
    let (_, report) = step_where(&before, [5, 3], TEXT, |a, rng| {
        vanilla_step(a, &d, Selection::Uniform, rng).unwrap()
    });
    assert_eq!(report.outcome, StepOutcome::InsertedEmpty { coords: vec![6, 3] });
}

#[test]
fn steps_on_empty_archive_fail() {
    let d = VectorPair::default();
    let mut a = Archive::new(vec![16, 16]);
    let mut rng = QdRng::seed_from_u64(0);
    assert_eq!(
        vanilla_step(&mut a, &d, Selection::Uniform, &mut rng),
        Err(QdError::NoElites)
    );
    assert_eq!(
        melita_step(&mut a, &d, Selection::default(), &mut rng),
        Err(QdError::NoElites)
    );
}

#[test]
fn empty_row_yields_no_candidates() {
    let d = figure_domain(0.3, 0.45, 0.7);
    let archive = archive_of(vec![16, 16], vec![d.solution(E_TEXT, E_IMAGE)]);
    let offspring = d.solution(E_TEXT, NEW_IMAGE);
    let new = Artefact::new(VISUAL, NEW_IMAGE);
    assert!(transverse_candidates(&archive, &d, &new, 0, &offspring).is_empty());
}

#[test]
fn parent_alone_in_row_is_deduplicated() {
    // Text mutation keeping bin 5: the parent is the only elite in text
    // row 5 and its image is unchanged in E'.
    let d = figure_domain(0.3, 0.45, 0.7);
    let archive = archive_of(vec![16, 16], vec![d.solution(E_TEXT, E_IMAGE)]);
    let new_text = tag(5, 42);
    let offspring = d.solution(new_text, E_IMAGE);
    let new = Artefact::new(TEXT, new_text);
    assert!(transverse_candidates(&archive, &d, &new, 5, &offspring).is_empty());
}

#[test]
fn two_foreign_elites_give_two_candidates() {
    let d = figure_domain(0.3, 0.45, 0.7);
    let archive = figure_archive(&d);
    let offspring = d.solution(E_TEXT, NEW_IMAGE);
    let new = Artefact::new(VISUAL, NEW_IMAGE);
    let mut got = transverse_candidates(&archive, &d, &new, 0, &offspring);
    got.sort_by(|a, b| a.coords().cmp(b.coords()));

    // brute force: every elite whose visual bin is 0, paired with the new image
    let expected: Vec<_> = archive
        .elites()
        .filter(|e| e.coords()[VISUAL] == 0)
        .map(|e| {
            let arts = vec![e.artefact(TEXT).clone(), new.clone()];
            (e.coords().to_vec(), d.cohere(&arts), arts)
        })
        .collect();
    assert_eq!(got.len(), 2);
    for (c, (coords, q, arts)) in got.iter().zip(expected) {
        assert_eq!(c.coords(), coords.as_slice());
        assert_eq!(c.fitness(), q);
        assert_eq!(c.artefacts(), arts.as_slice());
    }
}

#[test]
fn ties_in_the_candidate_list_prefer_the_direct_offspring() {
    // E' and R2' tie at 0.5: E' is tried first and takes the empty cell.
    let d = figure_domain(0.3, 0.5, 0.5);
    let before = figure_archive(&d);
    let (_, report) = step_where(&before, [5, 3], VISUAL, |a, rng| {
        melita_step(a, &d, Selection::Uniform, rng).unwrap()
    });
    assert_eq!(report.outcome, StepOutcome::InsertedEmpty { coords: vec![5, 0] });
}

#[test]
fn every_candidate_rejected() {
    // E' targets its parent's occupied cell and loses; R1', R2' lose too.
    let d = Scripted::new([tag(5, 99), tag(3, 77)])
        .with(E_TEXT.id, E_IMAGE.id, 0.9)
        .with(E_TEXT.id, 77, 0.2)
        .with(R1_TEXT.id, R1_IMAGE.id, 0.9)
        .with(R1_TEXT.id, 77, 0.8);
    let before = archive_of(
        vec![16, 16],
        vec![d.solution(E_TEXT, E_IMAGE), d.solution(R1_TEXT, tag(3, R1_IMAGE.id))],
    );
    let (after, report) = step_where(&before, [5, 3], VISUAL, |a, rng| {
        melita_step(a, &d, Selection::Uniform, rng).unwrap()
    });
    assert_eq!(report.outcome, StepOutcome::Rejected);
    assert_eq!(report.candidate_count, 2);
    assert_eq!(after.elite(&[5, 3]), before.elite(&[5, 3]));
    assert_eq!(after.elite(&[2, 3]), before.elite(&[2, 3]));
}

#[test]
fn vector_pair_solution_from_identical_vectors() {
    let d = VectorPair::default();
    let mut e = [0.0; 8];
    e[0] = 1.0;
    let s = characterize(
        &d,
        vec![
            Artefact::new(0, VectorArtefact(e)),
            Artefact::new(1, VectorArtefact(e)),
        ],
    )
    .unwrap();
    assert_eq!(s.fitness(), 1.0);
    assert_eq!(s.coords()[0], 8);
}
