//! Experiment configuration files (TOML).

use std::path::{Path, PathBuf};

use melita_core::domains::{ToyMediaParams, VectorPairParams};
use melita_core::{Method, RunConfig, Selection};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum DomainConfig {
    VectorPair(VectorPairParams),
    ToyMedia(ToyMediaParams),
}

impl Default for DomainConfig {
    fn default() -> Self {
        DomainConfig::VectorPair(VectorPairParams::default())
    }
}

impl DomainConfig {
    pub fn name(&self) -> &'static str {
        match self {
            DomainConfig::VectorPair(_) => "vector-pair",
            DomainConfig::ToyMedia(_) => "toy-media",
        }
    }

    pub fn axis_sizes(&self) -> [usize; 2] {
        [16, 16]
    }
}

/// Settings shared by every run of an experiment. `seed` is the base from
/// which run `i` takes seed `seed + i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSettings {
    pub domain: DomainConfig,
    pub selection: Selection,
    pub axis_sizes: Vec<usize>,
    pub init_count: i64,
    pub steps: i64,
    pub seed: u64,
    pub snapshot_every: i64,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            domain: DomainConfig::default(),
            selection: Selection::default(),
            axis_sizes: vec![16, 16],
            init_count: 100,
            steps: 2000,
            seed: 0,
            snapshot_every: 0,
        }
    }
}

impl RunSettings {
    pub fn run_config(&self, method: Method) -> RunConfig {
        RunConfig {
            method,
            selection: self.selection,
            init_count: self.init_count as usize,
            steps: self.steps as usize,
            snapshot_every: self.snapshot_every as usize,
        }
    }
}

/// One experimental condition. Its seed selects the random stream every
/// run of the label draws from, so labels differ while both methods share
/// each (label, run) initial population.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Label {
    pub name: String,
    pub seed: u64,
}

fn default_labels() -> Vec<Label> {
    (1..=7)
        .map(|i| Label {
            name: format!("T{i}"),
            seed: i,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub labels: Vec<Label>,
    pub methods: Vec<Method>,
    pub runs_per_method: i64,
    pub output_dir: PathBuf,
    pub run: RunSettings,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            labels: default_labels(),
            methods: Method::ALL.to_vec(),
            runs_per_method: 10,
            output_dir: PathBuf::from("results"),
            run: RunSettings::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> std::result::Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn validate(&self) -> Result<()> {
        let run = &self.run;
        if run.steps < 0 {
            return Err(HarnessError::invalid("run.steps", format!("must be >= 0, got {}", run.steps)));
        }
        if run.init_count < 1 {
            return Err(HarnessError::invalid(
                "run.init_count",
                format!("must be >= 1, got {}", run.init_count),
            ));
        }
        if run.snapshot_every < 0 {
            return Err(HarnessError::invalid(
                "run.snapshot_every",
                format!("must be >= 0, got {}", run.snapshot_every),
            ));
        }
        if self.runs_per_method < 1 {
            return Err(HarnessError::invalid(
                "runs_per_method",
                format!("must be >= 1, got {}", self.runs_per_method),
            ));
        }
        let declared = run.domain.axis_sizes();
        if run.axis_sizes != declared {
            return Err(HarnessError::invalid(
                "run.axis_sizes",
                format!(
                    "{:?} does not match the {} domain's {:?}",
                    run.axis_sizes,
                    run.domain.name(),
                    declared
                ),
            ));
        }
        if let Selection::Ucb { c } = run.selection {
            if !(c.is_finite() && c >= 0.0) {
                return Err(HarnessError::invalid("run.selection.c", format!("must be finite and >= 0, got {c}")));
            }
        }
        match &run.domain {
            DomainConfig::VectorPair(p) => {
                if !(p.sigma >= 0.0) {
                    return Err(HarnessError::invalid("run.domain.sigma", "must be >= 0"));
                }
                check_rate("run.domain.full_mutation_rate", p.full_mutation_rate)?;
            }
            DomainConfig::ToyMedia(p) => {
                if p.width < 3 || p.height < 3 {
                    return Err(HarnessError::invalid("run.domain.width", "images must be at least 3x3"));
                }
                if !(p.image_noise >= 0.0) {
                    return Err(HarnessError::invalid("run.domain.image_noise", "must be >= 0"));
                }
                check_rate("run.domain.full_mutation_rate", p.full_mutation_rate)?;
                check_ascending("run.domain.complexity_thresholds", p.complexity_thresholds)?;
                check_ascending("run.domain.colourfulness_thresholds", p.colourfulness_thresholds)?;
            }
        }
        if self.labels.is_empty() {
            return Err(HarnessError::invalid("labels", "at least one label is required"));
        }
        for (i, label) in self.labels.iter().enumerate() {
            let field = format!("labels[{i}].name");
            if label.name.is_empty()
                || !label
                    .name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
            {
                return Err(HarnessError::invalid(field, "must be non-empty ASCII letters, digits, '-' or '_'"));
            }
            if self.labels[..i].iter().any(|l| l.name == label.name) {
                return Err(HarnessError::invalid(field, format!("duplicate label `{}`", label.name)));
            }
        }
        if self.methods.is_empty() {
            return Err(HarnessError::invalid("methods", "at least one method is required"));
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[..i].contains(m) {
                return Err(HarnessError::invalid(format!("methods[{i}]"), format!("duplicate method `{m}`")));
            }
        }
        Ok(())
    }
}

fn check_rate(field: &str, rate: f64) -> Result<()> {
    if (0.0..=1.0).contains(&rate) {
        Ok(())
    } else {
        Err(HarnessError::invalid(field, format!("must lie in [0, 1], got {rate}")))
    }
}

fn check_ascending(field: &str, t: [f64; 3]) -> Result<()> {
    if t[0] < t[1] && t[1] < t[2] {
        Ok(())
    } else {
        Err(HarnessError::invalid(field, "thresholds must be strictly ascending"))
    }
}

/// Reads, parses and validates an experiment config. Unknown keys are
/// rejected.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let config = ExperimentConfig::parse(&text).map_err(|e| HarnessError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ExperimentConfig> {
        let c = ExperimentConfig::parse(text).map_err(|e| HarnessError::Parse {
            path: "test.toml".into(),
            message: e.to_string(),
        })?;
        c.validate()?;
        Ok(c)
    }

    #[test]
    fn minimal_config_fills_defaults() {
        let c = parse("").unwrap();
        assert_eq!(c.run.steps, 2000);
        assert_eq!(c.run.init_count, 100);
        assert_eq!(c.run.axis_sizes, vec![16, 16]);
        assert_eq!(c.runs_per_method, 10);
        assert_eq!(c.labels.len(), 7);
        assert_eq!(c.run.selection, Selection::Ucb { c: 1.0 });
        assert_eq!(c.methods, vec![Method::MapElites, Method::Melita]);
    }

    #[test]
    fn unknown_key_is_named() {
        let err = parse("runs_per_method = 3\nbogus = 1\n").unwrap_err().to_string();
        assert!(err.contains("bogus"), "{err}");
        let err = parse("[run]\nstepz = 3\n").unwrap_err().to_string();
        assert!(err.contains("stepz"), "{err}");
        let err = parse("[run.domain]\nname = \"vector-pair\"\nsigmaa = 0.1\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("sigmaa"), "{err}");
    }

    #[test]
    fn negative_steps_rejected() {
        let err = parse("[run]\nsteps = -1\n").unwrap_err().to_string();
        assert!(err.contains("run.steps"), "{err}");
    }

    #[test]
    fn domain_and_selection_sections() {
        let c = parse(
            r#"
runs_per_method = 2
methods = ["vanilla", "melita"]
[[labels]]
name = "A"
seed = 9
[run]
steps = 50
[run.selection]
kind = "uniform"
[run.domain]
name = "toy-media"
width = 16
"#,
        )
        .unwrap();
        assert_eq!(c.methods, vec![Method::MapElites, Method::Melita]);
        assert_eq!(c.run.selection, Selection::Uniform);
        match c.run.domain {
            DomainConfig::ToyMedia(p) => {
                assert_eq!(p.width, 16);
                assert_eq!(p.height, 32);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mismatched_axes_rejected() {
        let err = parse("[run]\naxis_sizes = [8, 8]\n").unwrap_err().to_string();
        assert!(err.contains("run.axis_sizes"), "{err}");
    }

    #[test]
    fn zero_runs_rejected() {
        let err = parse("runs_per_method = 0\n").unwrap_err().to_string();
        assert!(err.contains("runs_per_method"), "{err}");
    }
}
