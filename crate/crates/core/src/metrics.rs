//! Archive-level performance metrics and their area under the curve.

use crate::archive::Archive;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsSample {
    /// Selections made so far.
    pub step: u64,
    pub coverage: f64,
    pub mean_fitness: f64,
    pub max_fitness: f64,
    pub qd_score: f64,
}

/// Coverage, mean and max elite fitness, and QD score (sum of fitness).
/// An empty archive reports zeros.
pub fn archive_metrics<P: Clone>(archive: &Archive<P>) -> MetricsSample {
    let occupied = archive.len();
    let qd_score: f64 = archive.elites().map(|e| e.fitness()).sum();
    let max_fitness = archive.elites().map(|e| e.fitness()).fold(0.0, f64::max);
    let mean_fitness = if occupied == 0 {
        0.0
    } else {
        qd_score / occupied as f64
    };
    MetricsSample {
        step: archive.total_selections(),
        coverage: occupied as f64 / archive.cell_count() as f64,
        mean_fitness,
        max_fitness,
        qd_score,
    }
}

/// Left Riemann sum with unit step.
pub fn auc(series: &[f64]) -> f64 {
    series.iter().sum()
}
