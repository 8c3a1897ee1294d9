//! Partitioning Around Medoids with seeded random initialisation and
//! steepest-descent swaps.

use rand::seq::index::sample;
use rand::Rng;

use crate::error::QdError;

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    /// Item indices of the medoids, ascending.
    pub medoids: Vec<usize>,
    /// For each item, the position in `medoids` of its cluster.
    pub labels: Vec<usize>,
    /// Sum of item-to-medoid distances.
    pub cost: f64,
    /// Total cost after initialisation and after every accepted swap.
    pub cost_history: Vec<f64>,
}

impl Clustering {
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.medoids.len()];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }
}

const MIN_IMPROVEMENT: f64 = 1e-12;

pub fn k_medoids<T, F, R>(items: &[T], distance: F, k: usize, rng: &mut R) -> Result<Clustering, QdError>
where
    F: Fn(&T, &T) -> f64,
    R: Rng + ?Sized,
{
    let n = items.len();
    if k == 0 || k > n {
        return Err(QdError::InvalidClusterCount { k, n });
    }
    let mut matrix = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = distance(&items[i], &items[j]);
            matrix[i * n + j] = d;
            matrix[j * n + i] = d;
        }
    }
    let dist = |i: usize, j: usize| matrix[i * n + j];

    let mut medoids = sample(rng, n, k).into_vec();
    medoids.sort_unstable();
    let total = |medoids: &[usize]| -> f64 {
        (0..n)
            .map(|i| medoids.iter().map(|&m| dist(i, m)).fold(f64::INFINITY, f64::min))
            .sum()
    };

    let mut cost = total(&medoids);
    let mut cost_history = vec![cost];
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for slot in 0..k {
            for candidate in 0..n {
                if medoids.contains(&candidate) {
                    continue;
                }
                let mut trial = medoids.clone();
                trial[slot] = candidate;
                let trial_cost = total(&trial);
                let best_cost = best.map_or(cost - MIN_IMPROVEMENT, |(_, _, c)| c);
                if trial_cost < best_cost {
                    best = Some((slot, candidate, trial_cost));
                }
            }
        }
        let Some((slot, candidate, new_cost)) = best else {
            break;
        };
        medoids[slot] = candidate;
        cost = new_cost;
        cost_history.push(cost);
    }

    medoids.sort_unstable();
    let labels = (0..n)
        .map(|i| {
            let mut best = 0;
            for (slot, &m) in medoids.iter().enumerate() {
                if dist(i, m) < dist(i, medoids[best]) {
                    best = slot;
                }
            }
            best
        })
        .collect();
    Ok(Clustering {
        medoids,
        labels,
        cost,
        cost_history,
    })
}
