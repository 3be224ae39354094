use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ela_explain::pipeline::{CommandSummary, Pipeline, Profile, RunConfig};
use ela_explain::ErrorClass;

#[derive(Parser)]
#[command(
    name = "ela-explain",
    version,
    about = "Landscape features, performance prediction, and Shapley explanations for black-box benchmarks"
)]
struct Cli {
    /// Declarative run configuration (TOML); missing fields fall back
    /// to desk defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Overrides the configured global seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for the parallel sections (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Recompute outputs that already exist.
    #[arg(long, global = true)]
    force: bool,

    /// Built-in configuration used when no --config is given.
    #[arg(long, global = true, value_enum, default_value_t = ProfileArg::Desk)]
    profile: ProfileArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Desk,
    Paper,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the configured problem instances and compute landscape
    /// features (or ingest an external landscape CSV).
    Features,
    /// Run the optimizer per instance (or ingest a performance CSV).
    Performance {
        /// Write per-generation run logs as JSONL.
        #[arg(long)]
        trace: bool,
    },
    /// Cross-validated training of every configured model plus the
    /// per-problem MAE report.
    TrainEval,
    /// Shapley explanations of one fold's models on their training
    /// partition, plus the configured local instance.
    Explain {
        #[arg(long, default_value_t = 0)]
        fold: usize,
    },
    /// Per-fold model representations, clustering, top-k intersections,
    /// and the embedding-input export.
    Represent,
    /// The whole pipeline in order.
    All {
        #[arg(long)]
        trace: bool,
    },
}

fn load_config(cli: &Cli) -> ela_explain::Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::profile(match cli.profile {
            ProfileArg::Desk => Profile::Desk,
            ProfileArg::Paper => Profile::Paper,
        }),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    config.validate()?;
    Ok(config)
}

fn report(summary: &CommandSummary) {
    let status = if summary.skipped { "skipped" } else { "done" };
    eprintln!("[{}] {status}", summary.command);
    for note in &summary.notes {
        eprintln!("  - {note}");
    }
    eprintln!("  {} output file(s)", summary.outputs.len());
}

fn run(cli: &Cli) -> ela_explain::Result<()> {
    ela_explain::exec::configure_jobs(cli.jobs);
    let config = load_config(cli)?;
    let mut pipeline = Pipeline::new(config)?;
    pipeline.force = cli.force;

    match &cli.command {
        Command::Features => report(&pipeline.cmd_features()?),
        Command::Performance { trace } => {
            pipeline.trace = *trace;
            report(&pipeline.cmd_performance()?);
        }
        Command::TrainEval => report(&pipeline.cmd_train_eval()?),
        Command::Explain { fold } => report(&pipeline.cmd_explain(*fold)?),
        Command::Represent => report(&pipeline.cmd_represent()?),
        Command::All { trace } => {
            pipeline.trace = *trace;
            for summary in pipeline.cmd_all()? {
                report(&summary);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            match e.class() {
                ErrorClass::Config => ExitCode::from(2),
                ErrorClass::Data => ExitCode::from(3),
                ErrorClass::Numeric => ExitCode::from(4),
            }
        }
    }
}
