//! Mean and nearest-neighbour distances between elites under a pluggable
//! payload distance.

use crate::error::QdError;

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    pub mean_distance: Vec<f64>,
    pub nearest_neighbour: Vec<f64>,
    pub archive_mean_distance: f64,
    pub archive_nearest_neighbour: f64,
    /// Set when only one elite was given; every distance is then 0.
    pub single_elite: bool,
}

/// Number of leading items whose pairs are checked in both directions.
const SYMMETRY_PROBE: usize = 8;
const SYMMETRY_TOLERANCE: f64 = 1e-9;

pub fn diversity<T, F>(items: &[T], distance: F) -> Result<DistanceReport, QdError>
where
    F: Fn(&T, &T) -> f64,
{
    let n = items.len();
    if n == 0 {
        return Err(QdError::NoElites);
    }
    if n == 1 {
        return Ok(DistanceReport {
            mean_distance: vec![0.0],
            nearest_neighbour: vec![0.0],
            archive_mean_distance: 0.0,
            archive_nearest_neighbour: 0.0,
            single_elite: true,
        });
    }
    let probe = n.min(SYMMETRY_PROBE);
    for i in 0..probe {
        for j in i + 1..probe {
            let forward = distance(&items[i], &items[j]);
            let backward = distance(&items[j], &items[i]);
            if (forward - backward).abs() > SYMMETRY_TOLERANCE * forward.abs().max(1.0) {
                return Err(QdError::AsymmetricDistance {
                    i,
                    j,
                    forward,
                    backward,
                });
            }
        }
    }

    let mut sums = vec![0.0; n];
    let mut nearest = vec![f64::INFINITY; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = distance(&items[i], &items[j]);
            assert!(d >= 0.0, "distance must be non-negative, got {d}");
            sums[i] += d;
            sums[j] += d;
            nearest[i] = nearest[i].min(d);
            nearest[j] = nearest[j].min(d);
        }
    }
    let mean_distance: Vec<f64> = sums.iter().map(|s| s / (n - 1) as f64).collect();
    let archive_mean_distance = mean_distance.iter().sum::<f64>() / n as f64;
    let archive_nearest_neighbour = nearest.iter().sum::<f64>() / n as f64;
    Ok(DistanceReport {
        mean_distance,
        nearest_neighbour: nearest,
        archive_mean_distance,
        archive_nearest_neighbour,
        single_elite: false,
    })
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "euclidean distance needs equal lengths");
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
