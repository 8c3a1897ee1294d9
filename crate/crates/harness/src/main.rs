use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use melita_harness::archive_file::ArchiveFile;
use melita_harness::config::load_config;
use melita_harness::experiment::{replay, run_experiment, MANIFEST_FILE};
use melita_harness::{analysis, compare, domain_constants, HarnessError, Result};

#[derive(Parser)]
#[command(name = "melita", version, about = "Run and analyse MAP-Elites / MEliTA experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every label, method and run of an experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `output_dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the experiment recorded in a manifest.
    Replay {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare two method directories with a per-label rank-sum test.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Write the comparison table as CSV here as well.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Pairwise diversity of one modality across an archive's elites.
    Diversity {
        #[arg(long)]
        archive: PathBuf,
        #[arg(long)]
        modality: usize,
        #[arg(long, default_value = "euclidean")]
        distance: String,
    },
    /// Pick k exemplar elites with k-medoids.
    Medoids {
        #[arg(long)]
        archive: PathBuf,
        #[arg(short, long)]
        k: usize,
        /// Per-modality weights of the combined distance, comma separated.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the toy-media domain's fixed constants as JSON.
    Constants {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialisable output") + "\n"
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, out } => {
            let cfg = load_config(&config)?;
            let out = out.unwrap_or_else(|| cfg.output_dir.clone());
            let manifest = run_experiment(&cfg, &out)?;
            println!("{} runs written; manifest at {}", manifest.runs.len(), out.join(MANIFEST_FILE).display());
        }
        Command::Replay { manifest, out } => {
            let m = replay(&manifest, &out)?;
            println!("{} runs replayed into {}", m.runs.len(), out.display());
        }
        Command::Compare { a, b, csv } => {
            let cmp = compare::compare_dirs(&a, &b)?;
            for w in &cmp.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", cmp.summary(&a.display().to_string(), &b.display().to_string()));
            if let Some(path) = csv {
                std::fs::write(&path, cmp.to_csv()).map_err(|e| HarnessError::io(&path, e))?;
            }
        }
        Command::Diversity { archive, modality, distance } => {
            let file = ArchiveFile::read(&archive)?;
            print!("{}", to_json(&analysis::analyze_diversity(&file, modality, &distance)?));
        }
        Command::Medoids { archive, k, weights, seed } => {
            let file = ArchiveFile::read(&archive)?;
            print!("{}", to_json(&analysis::medoids(&file, k, weights.as_deref(), seed)?));
        }
        Command::Constants { out } => {
            let json = to_json(&domain_constants());
            match out {
                Some(path) => std::fs::write(&path, json).map_err(|e| HarnessError::io(&path, e))?,
                None => print!("{json}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
