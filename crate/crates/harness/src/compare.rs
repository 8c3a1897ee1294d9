//! Rank-sum comparison of two methods' metric series, per label.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use melita_core::ranksum::rank_sum_test;
use melita_core::{auc, MetricsSample};
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::experiment::METRICS_FILE;
use crate::metrics_file::{read_series, sig9};

pub const SIGNIFICANCE: f64 = 0.05;

pub const METRIC_NAMES: [&str; 8] = [
    "final_mean_fitness",
    "final_max_fitness",
    "final_coverage",
    "final_qd_score",
    "auc_mean_fitness",
    "auc_max_fitness",
    "auc_coverage",
    "auc_qd_score",
];

/// The eight per-run numbers compared between methods, in
/// [`METRIC_NAMES`] order.
pub fn run_summary(series: &[MetricsSample]) -> [f64; 8] {
    let last = series.last().copied().unwrap_or(MetricsSample {
        step: 0,
        coverage: 0.0,
        mean_fitness: 0.0,
        max_fitness: 0.0,
        qd_score: 0.0,
    });
    let column = |f: fn(&MetricsSample) -> f64| auc(&series.iter().map(f).collect::<Vec<_>>());
    [
        last.mean_fitness,
        last.max_fitness,
        last.coverage,
        last.qd_score,
        column(|s| s.mean_fitness),
        column(|s| s.max_fitness),
        column(|s| s.coverage),
        column(|s| s.qd_score),
    ]
}

/// Per-label run summaries of one method.
pub type MethodRuns = BTreeMap<String, Vec<[f64; 8]>>;

/// Reads `<dir>/<label>/<run>/metrics.csv` for every label and run
/// directory, in name order.
pub fn load_method_dir(dir: &Path) -> Result<MethodRuns> {
    let mut out = MethodRuns::new();
    for label_dir in sorted_subdirs(dir)? {
        let label = label_dir
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default()
            .to_string();
        let mut runs = Vec::new();
        for run_dir in sorted_subdirs(&label_dir)? {
            let metrics = run_dir.join(METRICS_FILE);
            if metrics.is_file() {
                runs.push(run_summary(&read_series(&metrics)?));
            }
        }
        if !runs.is_empty() {
            out.insert(label, runs);
        }
    }
    Ok(out)
}

fn sorted_subdirs(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    let mut dirs = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| HarnessError::io(dir, e))? {
        let path = entry.map_err(|e| HarnessError::io(dir, e))?.path();
        if path.is_dir() {
            dirs.push(path);
        }
    }
    dirs.sort();
    Ok(dirs)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub label: String,
    pub metric: &'static str,
    pub n_a: usize,
    pub n_b: usize,
    pub mean_a: f64,
    pub mean_b: f64,
    pub u: f64,
    pub p_two_tail: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub warnings: Vec<String>,
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn compare_runs(a: &MethodRuns, b: &MethodRuns) -> Result<Comparison> {
    let mut cmp = Comparison::default();
    for label in a.keys().chain(b.keys()) {
        if a.contains_key(label) != b.contains_key(label) {
            cmp.warnings.push(format!("label {label} present for only one method; skipped"));
        }
    }
    cmp.warnings.dedup();
    for (label, runs_a) in a {
        let Some(runs_b) = b.get(label) else { continue };
        if runs_a.len() < 2 || runs_b.len() < 2 {
            return Err(HarnessError::InsufficientSamples(format!(
                "label {label} has {} and {} runs; at least 2 per method are needed",
                runs_a.len(),
                runs_b.len()
            )));
        }
        if runs_a.len() != runs_b.len() {
            cmp.warnings.push(format!(
                "label {label}: run counts differ ({} vs {})",
                runs_a.len(),
                runs_b.len()
            ));
        }
        for (i, metric) in METRIC_NAMES.iter().enumerate() {
            let xa: Vec<f64> = runs_a.iter().map(|r| r[i]).collect();
            let xb: Vec<f64> = runs_b.iter().map(|r| r[i]).collect();
            let test = rank_sum_test(&xa, &xb)?;
            cmp.rows.push(ComparisonRow {
                label: label.clone(),
                metric,
                n_a: xa.len(),
                n_b: xb.len(),
                mean_a: mean(&xa),
                mean_b: mean(&xb),
                u: test.u,
                p_two_tail: test.p_two_tail,
                significant: test.p_two_tail < SIGNIFICANCE,
            });
        }
    }
    if cmp.rows.is_empty() {
        return Err(HarnessError::InsufficientSamples("no label has runs for both methods".into()));
    }
    Ok(cmp)
}

pub fn compare_dirs(a: &Path, b: &Path) -> Result<Comparison> {
    compare_runs(&load_method_dir(a)?, &load_method_dir(b)?)
}

impl Comparison {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("label,metric,n_a,n_b,mean_a,mean_b,u,p_two_tail,significant\n");
        for r in &self.rows {
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                r.label,
                r.metric,
                r.n_a,
                r.n_b,
                sig9(r.mean_a),
                sig9(r.mean_b),
                r.u,
                sig9(r.p_two_tail),
                r.significant
            )
            .unwrap();
        }
        s
    }

    pub fn summary(&self, name_a: &str, name_b: &str) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "Two-tailed Wilcoxon rank-sum, A = {name_a}, B = {name_b}, significance p < {SIGNIFICANCE}."
        )
        .unwrap();
        writeln!(s, "AUCs are unit-step sums over the per-selection series.").unwrap();
        for w in &self.warnings {
            writeln!(s, "warning: {w}").unwrap();
        }
        let mut current = "";
        for r in &self.rows {
            if r.label != current {
                current = &r.label;
                writeln!(s, "\n[{}]  n = {} vs {}", r.label, r.n_a, r.n_b).unwrap();
            }
            let flag = if r.significant {
                if r.mean_a > r.mean_b {
                    "  * A higher"
                } else {
                    "  * B higher"
                }
            } else {
                ""
            };
            writeln!(
                s,
                "  {:<20} A {:>14.6}  B {:>14.6}  U {:>6.1}  p {:.4}{flag}",
                r.metric, r.mean_a, r.mean_b, r.u, r.p_two_tail
            )
            .unwrap();
        }
        s
    }
}
