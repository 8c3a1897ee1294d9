use std::collections::BTreeMap;

use crate::solution::Solution;

/// Selection bookkeeping for one cell. It belongs to the cell, so it
/// survives when the occupant is replaced.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CellStats {
    pub times_selected: u64,
    pub offspring_inserted: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell<P> {
    pub elite: Solution<P>,
    /// Selection count at the moment the elite entered the archive
    /// (0 for the initial population).
    pub birth_step: u64,
    pub stats: CellStats,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InsertOutcome {
    InsertedEmpty,
    Replaced { old_fitness: f64, new_fitness: f64 },
    Rejected,
}

impl InsertOutcome {
    pub fn changed(&self) -> bool {
        !matches!(self, InsertOutcome::Rejected)
    }
}

/// An N-dimensional grid of cells, each holding at most one elite.
#[derive(Debug, Clone, PartialEq)]
pub struct Archive<P> {
    axis_sizes: Vec<usize>,
    cells: BTreeMap<Vec<usize>, Cell<P>>,
    total_selections: u64,
}

impl<P: Clone> Archive<P> {
    pub fn new(axis_sizes: Vec<usize>) -> Self {
        assert!(!axis_sizes.is_empty(), "archive needs at least one axis");
        assert!(axis_sizes.iter().all(|&s| s > 0), "axis sizes must be positive");
        Self {
            axis_sizes,
            cells: BTreeMap::new(),
            total_selections: 0,
        }
    }

    pub fn axis_sizes(&self) -> &[usize] {
        &self.axis_sizes
    }

    pub fn cell_count(&self) -> usize {
        self.axis_sizes.iter().product()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total_selections(&self) -> u64 {
        self.total_selections
    }

    pub fn get(&self, coords: &[usize]) -> Option<&Cell<P>> {
        self.cells.get(coords)
    }

    pub fn elite(&self, coords: &[usize]) -> Option<&Solution<P>> {
        self.cells.get(coords).map(|c| &c.elite)
    }

    /// Occupied cells in ascending lexicographic coordinate order.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &Cell<P>)> {
        self.cells.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn elites(&self) -> impl Iterator<Item = &Solution<P>> {
        self.cells.values().map(|c| &c.elite)
    }

    /// Places `candidate` in its cell if the cell is empty or the occupant
    /// is strictly less fit. Ties keep the occupant.
    ///
    /// Panics if the candidate's coordinates fall outside the grid.
    pub fn insert(&mut self, candidate: Solution<P>) -> InsertOutcome {
        self.check_coords(candidate.coords());
        let birth_step = self.total_selections;
        match self.cells.get_mut(candidate.coords()) {
            None => {
                self.cells.insert(
                    candidate.coords().to_vec(),
                    Cell {
                        elite: candidate,
                        birth_step,
                        stats: CellStats::default(),
                    },
                );
                InsertOutcome::InsertedEmpty
            }
            Some(cell) => {
                let old_fitness = cell.elite.fitness();
                let new_fitness = candidate.fitness();
                if old_fitness < new_fitness {
                    cell.elite = candidate;
                    cell.birth_step = birth_step;
                    InsertOutcome::Replaced {
                        old_fitness,
                        new_fitness,
                    }
                } else {
                    InsertOutcome::Rejected
                }
            }
        }
    }

    /// True when `fitness` would win the cell at `coords` under the
    /// insertion rule.
    pub fn would_accept(&self, coords: &[usize], fitness: f64) -> bool {
        self.cells
            .get(coords)
            .is_none_or(|c| c.elite.fitness() < fitness)
    }

    pub(crate) fn record_selection(&mut self, coords: &[usize]) {
        let cell = self
            .cells
            .get_mut(coords)
            .expect("selected cell must be occupied");
        cell.stats.times_selected += 1;
        self.total_selections += 1;
    }

    pub(crate) fn record_success(&mut self, coords: &[usize]) {
        if let Some(cell) = self.cells.get_mut(coords) {
            cell.stats.offspring_inserted += 1;
        }
    }

    /// Rebuilds an archive from stored cells, e.g. after loading from disk.
    /// Selection statistics start at zero.
    pub fn restore(
        axis_sizes: Vec<usize>,
        cells: impl IntoIterator<Item = (Solution<P>, u64)>,
    ) -> Self {
        let mut archive = Self::new(axis_sizes);
        for (elite, birth_step) in cells {
            archive.check_coords(elite.coords());
            let key = elite.coords().to_vec();
            let previous = archive.cells.insert(
                key,
                Cell {
                    elite,
                    birth_step,
                    stats: CellStats::default(),
                },
            );
            assert!(previous.is_none(), "two elites restored into one cell");
        }
        archive
    }

    fn check_coords(&self, coords: &[usize]) {
        assert_eq!(
            coords.len(),
            self.axis_sizes.len(),
            "coordinate arity does not match the archive"
        );
        for (axis, (&c, &size)) in coords.iter().zip(&self.axis_sizes).enumerate() {
            assert!(c < size, "coordinate {c} outside axis {axis} of size {size}");
        }
    }
}
