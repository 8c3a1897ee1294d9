//! Parent selection policies over occupied archive cells.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::archive::{Archive, CellStats};
use crate::error::QdError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Selection {
    Uniform,
    /// UCB1 over cells: insertion success rate plus `c`-weighted
    /// exploration bonus; never-selected cells go first.
    Ucb {
        #[serde(default = "default_ucb_c")]
        c: f64,
    },
}

pub const DEFAULT_UCB_C: f64 = 1.0;

fn default_ucb_c() -> f64 {
    DEFAULT_UCB_C
}

impl Default for Selection {
    fn default() -> Self {
        Selection::Ucb { c: DEFAULT_UCB_C }
    }
}

impl Selection {
    pub fn select<P: Clone, R: Rng + ?Sized>(
        &self,
        archive: &mut Archive<P>,
        rng: &mut R,
    ) -> Result<Vec<usize>, QdError> {
        match *self {
            Selection::Uniform => select_uniform(archive, rng),
            Selection::Ucb { c } => select_ucb(archive, rng, c),
        }
    }
}

pub fn select_uniform<P: Clone, R: Rng + ?Sized>(
    archive: &mut Archive<P>,
    rng: &mut R,
) -> Result<Vec<usize>, QdError> {
    if archive.is_empty() {
        return Err(QdError::NoElites);
    }
    let index = rng.gen_range(0..archive.len());
    let coords = archive
        .iter()
        .nth(index)
        .map(|(coords, _)| coords.to_vec())
        .expect("index within occupied cells");
    archive.record_selection(&coords);
    Ok(coords)
}

/// UCB1 score of a cell given the archive-wide selection count.
pub fn ucb_score(stats: &CellStats, total_selections: u64, c: f64) -> f64 {
    let n = stats.times_selected;
    if n == 0 {
        return f64::INFINITY;
    }
    let success_rate = stats.offspring_inserted as f64 / n as f64;
    let t = total_selections.max(1) as f64;
    success_rate + c * (2.0 * t.ln() / n as f64).sqrt()
}

pub fn select_ucb<P: Clone, R: Rng + ?Sized>(
    archive: &mut Archive<P>,
    rng: &mut R,
    c: f64,
) -> Result<Vec<usize>, QdError> {
    if archive.is_empty() {
        return Err(QdError::NoElites);
    }
    let total = archive.total_selections();
    let mut best = f64::NEG_INFINITY;
    let mut ties: Vec<&[usize]> = Vec::new();
    for (coords, cell) in archive.iter() {
        let score = ucb_score(&cell.stats, total, c);
        if score > best {
            best = score;
            ties.clear();
            ties.push(coords);
        } else if score == best {
            ties.push(coords);
        }
    }
    let chosen = if ties.len() == 1 {
        ties[0].to_vec()
    } else {
        ties[rng.gen_range(0..ties.len())].to_vec()
    };
    archive.record_selection(&chosen);
    Ok(chosen)
}
