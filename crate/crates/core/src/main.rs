use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rsma_sinr::experiments::{self, ConfigFile, ExperimentConfig, ExperimentKind, OutputFormat, Overrides};
use rsma_sinr::montecarlo::{with_workers, worker_count};
use rsma_sinr::Error;

#[derive(Parser, Debug)]
#[command(name = "rsma-sinr", version, about = "Outdated-CSIT SINR statistics and Gamma surrogates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Empirical PDF of X against both Gamma surrogates.
    PdfCompare(#[command(flatten)] Common),
    /// Density MSE of both surrogates over N_t/K and K.
    MseSweep(#[command(flatten)] Common),
    /// Exact and approximate ergodic sum rates over tau.
    SumrateSweep(#[command(flatten)] Common),
    /// Closed-form moments against Monte Carlo estimates.
    ValidateMoments(#[command(flatten)] Common),
}

#[derive(clap::Args, Debug)]
struct Common {
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

fn run(kind: ExperimentKind, args: Common) -> Result<(), Error> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let overrides = Overrides {
        seed: args.seed,
        trials: args.trials,
        bins: args.bins,
        out: args.out,
        format: args.format.map(Into::into),
    };
    let cfg = ExperimentConfig::resolve(kind, file, overrides)?;
    let workers = worker_count()?;
    log::info!("{} with {workers} worker(s), seed {}", kind.as_str(), cfg.seed);
    let output = with_workers(workers, || experiments::run(&cfg))??;
    let text = output.render(cfg.format)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (kind, args) = match cli.command {
        Command::PdfCompare(a) => (ExperimentKind::PdfCompare, a),
        Command::MseSweep(a) => (ExperimentKind::MseSweep, a),
        Command::SumrateSweep(a) => (ExperimentKind::SumrateSweep, a),
        Command::ValidateMoments(a) => (ExperimentKind::ValidateMoments, a),
    };
    match run(kind, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
