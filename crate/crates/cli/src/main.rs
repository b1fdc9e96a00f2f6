use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use qgestalt::music::SimilarityMode;
use qgestalt_cli::config::DEFAULT_THRESHOLD;
use qgestalt_cli::{commands, selftest, OutputFormat, RunConfig};

/// Quantum-inspired recognition of feature vectors and musical themes.
#[derive(Parser)]
#[command(name = "qgestalt", version)]
struct Cli {
    /// Classification threshold r*, in (1/2, 1].
    #[arg(long, global = true, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Similarity mode for musical classification.
    #[arg(long, global = true, default_value = "strong")]
    mode: SimilarityMode,
    /// Interval slots of the melodic channel.
    #[arg(long, global = true, default_value_t = qgestalt::music::DEFAULT_MELODIC_LEN)]
    melodic_len: usize,
    /// Ticks per beat of the rhythm grid.
    #[arg(long, global = true, default_value_t = qgestalt::music::DEFAULT_GRID)]
    grid: u32,
    /// Ticks of the rhythmic channel; defaults to the longest theme.
    #[arg(long, global = true)]
    span: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Amplitude-encode every row of a feature file.
    Encode { features: PathBuf },
    /// Quantum and classical centroids of a labeled data set.
    Centroid { dataset: PathBuf },
    /// Label each query against the data set's centroids.
    Classify { dataset: PathBuf, queries: PathBuf },
    /// Pairwise fidelities between the rows of a feature file.
    Similarity { features: PathBuf },
    /// Melodic and rhythmic similarity of two themes.
    MusicSimilarity { a: PathBuf, b: PathBuf },
    /// Classify query themes against a manifest of labeled themes.
    MusicClassify {
        manifest: PathBuf,
        #[arg(required = true)]
        queries: Vec<PathBuf>,
    },
    /// Run the built-in verification suite.
    Selftest,
}

fn run(cli: Cli) -> Result<bool> {
    let config = RunConfig::new(
        cli.threshold,
        cli.melodic_len,
        cli.grid,
        cli.span,
        cli.mode,
        cli.format,
    )?;
    let mut ok = true;
    let table = match &cli.command {
        Command::Encode { features } => commands::encode(features)?,
        Command::Centroid { dataset } => commands::centroid(dataset)?,
        Command::Classify { dataset, queries } => commands::classify(&config, dataset, queries)?,
        Command::Similarity { features } => commands::similarity(&config, features)?,
        Command::MusicSimilarity { a, b } => commands::music_similarity(&config, a, b)?,
        Command::MusicClassify { manifest, queries } => {
            commands::music_classify(&config, manifest, queries)?
        }
        Command::Selftest => {
            let results = selftest::run(&config, selftest::seed_from_env()?);
            ok = selftest::all_passed(&results);
            selftest::table(&results)
        }
    };
    let report = table.render(config.format)?;
    match &cli.output {
        Some(path) => {
            fs::write(path, report).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{report}"),
    }
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
