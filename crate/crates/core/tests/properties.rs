use melita_core::domains::{ToyMedia, VectorPair};
use melita_core::{
    characterize, melita_step_with, run, run_observed, seed_archive, vanilla_step, Archive,
    Domain, Method, QdError, QdRng, RunConfig, Selection, Transverse,
};
use proptest::prelude::*;
use rand::SeedableRng;

fn config(method: Method, steps: usize) -> RunConfig {
    RunConfig {
        method,
        steps,
        ..RunConfig::default()
    }
}

/// Re-evaluates every elite from its payloads.
fn assert_consistent<D: Domain>(archive: &Archive<D::Payload>, domain: &D) {
    for (coords, cell) in archive.iter() {
        let fresh = characterize(domain, cell.elite.artefacts().to_vec()).expect("elite classifies");
        assert_eq!(fresh.coords(), coords);
        assert_eq!(fresh.fitness(), cell.elite.fitness());
        assert!((0.0..=1.0).contains(&fresh.fitness()));
    }
}

fn check_step_invariants<D: Domain>(domain: &D, method: Method, steps: usize, seed: u64) {
    let mut rng = QdRng::seed_from_u64(seed);
    let mut previous: Option<Archive<D::Payload>> = None;
    let mut violations = 0;
    let record = run_observed(domain, &config(method, steps), &mut rng, |archive, report| {
        if let Some(before) = &previous {
            let changed: Vec<_> = archive
                .iter()
                .filter(|(c, cell)| before.elite(c) != Some(&cell.elite))
                .map(|(c, _)| c.to_vec())
                .collect();
            let grew = archive.len() - before.len();
            let monotone = before
                .iter()
                .all(|(c, cell)| archive.elite(c).unwrap().fitness() >= cell.elite.fitness());
            let consistent = changed.len() <= 1
                && grew <= 1
                && monotone
                && changed.first().map(|c| c.as_slice()) == report.outcome.modified_cell();
            if !consistent {
                violations += 1;
            }
        }
        previous = Some(archive.clone());
    })
    .unwrap();
    assert_eq!(violations, 0);
    assert_consistent(&record.archive, domain);
    let selected: u64 = record.archive.iter().map(|(_, c)| c.stats.times_selected).sum();
    assert_eq!(selected, record.archive.total_selections());
    assert_eq!(record.archive.total_selections(), steps as u64);
}

#[test]
fn melita_changes_at_most_one_cell_per_step() {
    check_step_invariants(&VectorPair::default(), Method::Melita, 1_500, 3);
}

#[test]
fn mapelites_changes_at_most_one_cell_per_step() {
    check_step_invariants(&VectorPair::default(), Method::MapElites, 1_500, 4);
}

#[test]
fn toy_media_run_keeps_invariants() {
    check_step_invariants(&ToyMedia::default(), Method::Melita, 200, 5);
}

#[test]
fn disabled_transverse_reproduces_vanilla() {
    let d = VectorPair::default();
    for seed in 0..3 {
        let mut a = Archive::new(vec![16, 16]);
        let mut rng = QdRng::seed_from_u64(seed);
        seed_archive(&mut a, &d, 100, &mut rng);
        let mut b = a.clone();
        let mut rng_b = rng.clone();
        for _ in 0..500 {
            let ra = vanilla_step(&mut a, &d, Selection::default(), &mut rng).unwrap();
            let rb =
                melita_step_with(&mut b, &d, Selection::default(), Transverse::Disabled, &mut rng_b)
                    .unwrap();
            assert_eq!(ra, rb);
            assert_eq!(a, b);
        }
    }
}

#[test]
fn seeding_examples() {
    let d = VectorPair::default();
    let mut a = Archive::new(vec![16, 16]);
    assert_eq!(seed_archive(&mut a, &d, 0, &mut QdRng::seed_from_u64(1)), 0);
    assert!(a.is_empty());

    let n = seed_archive(&mut a, &d, 100, &mut QdRng::seed_from_u64(1));
    assert!(n <= 100 && n > 0);
    let mut again = Archive::new(vec![16, 16]);
    seed_archive(&mut again, &d, 100, &mut QdRng::seed_from_u64(1));
    assert_eq!(a, again);
}

#[test]
fn zero_steps_returns_seeded_archive() {
    let d = VectorPair::default();
    let record = run(&d, &config(Method::Melita, 0), &mut QdRng::seed_from_u64(2)).unwrap();
    assert!(record.series.is_empty());
    let mut seeded = Archive::new(vec![16, 16]);
    seed_archive(&mut seeded, &d, 100, &mut QdRng::seed_from_u64(2));
    assert_eq!(record.archive, seeded);
}

#[test]
fn full_length_series_and_determinism() {
    let d = VectorPair::default();
    let cfg = RunConfig {
        snapshot_every: 500,
        ..config(Method::Melita, 2000)
    };
    let a = run(&d, &cfg, &mut QdRng::seed_from_u64(9)).unwrap();
    let b = run(&d, &cfg, &mut QdRng::seed_from_u64(9)).unwrap();
    assert_eq!(a.series.len(), 2000);
    assert_eq!(a.snapshots.len(), 4);
    assert_eq!(a.snapshots[3].1, a.archive);
    assert_eq!(a, b);
    for (i, s) in a.series.iter().enumerate() {
        assert_eq!(s.step, i as u64 + 1);
    }
}

#[test]
fn unseedable_domain_reports_no_elites() {
    let d = VectorPair::default();
    let cfg = RunConfig {
        init_count: 0,
        ..config(Method::MapElites, 10)
    };
    assert_eq!(
        run(&d, &cfg, &mut QdRng::seed_from_u64(0)).unwrap_err(),
        QdError::NoElites
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn melita_without_transverse_matches_vanilla_for_any_seed(seed in any::<u64>(), uniform in any::<bool>()) {
        let d = VectorPair::default();
        let selection = if uniform { Selection::Uniform } else { Selection::default() };
        let mut a = Archive::new(vec![16, 16]);
        let mut rng = QdRng::seed_from_u64(seed);
        seed_archive(&mut a, &d, 50, &mut rng);
        let mut b = a.clone();
        let mut rng_b = rng.clone();
        for _ in 0..100 {
            vanilla_step(&mut a, &d, selection, &mut rng).unwrap();
            melita_step_with(&mut b, &d, selection, Transverse::Disabled, &mut rng_b).unwrap();
        }
        prop_assert_eq!(a, b);
    }

    #[test]
    fn per_step_occupancy_grows_by_at_most_one(seed in any::<u64>()) {
        let d = VectorPair::default();
        let mut rng = QdRng::seed_from_u64(seed);
        let record = run(&d, &config(Method::Melita, 200), &mut rng).unwrap();
        let mut prev = record.seeded;
        for s in &record.series {
            let grew = ((s.coverage - prev.coverage) * 256.0).round();
            prop_assert!(grew == 0.0 || grew == 1.0);
            prop_assert!(s.max_fitness >= prev.max_fitness);
            prop_assert!(s.qd_score >= prev.qd_score - 1e-12);
            prev = *s;
        }
    }
}
