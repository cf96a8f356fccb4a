//! `kstar`: Picard indices of toric varieties and K*-surfaces, and the
//! classification of log del Pezzo surfaces of Picard number one by index.

mod report;
mod runs;
mod verify;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "kstar", version, about = "Picard indices of toric varieties and rational K*-surfaces")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format. Reports are always JSON; classification output is CSV
    /// (default) or JSON Lines.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for a defining matrix given as JSON {"type", "l", "d"}.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Class group and Picard data of a toric variety given as JSON {"rays", "max_cones"}.
    Toric {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fake weighted projective planes of Picard index up to a bound.
    ClassifyToric {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_index: u64,
        #[command(flatten)]
        io: RunIo,
    },
    /// Non-toric log del Pezzo K*-surfaces of Picard number one up to a bound.
    ClassifyNontoric {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_index: u64,
        /// Comma separated cases to keep, e.g. eAeA,eDp.
        #[arg(long, value_delimiter = ',')]
        cases: Vec<kstar::classify::NontoricCase>,
        #[command(flatten)]
        io: RunIo,
    },
    /// Per-index and cumulative counts of both classifications.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_index: u64,
        #[command(flatten)]
        io: RunIo,
    },
    /// Randomized consistency checks on valid defining matrices.
    Verify {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct RunIo {
    #[arg(long)]
    out: Option<PathBuf>,
    /// Checkpoint file; an existing one continues the run it describes.
    #[arg(long, requires = "out")]
    resume: Option<PathBuf>,
}

/// Failure classes, mapped to the process exit status.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: a computed invariant or property check failed.
    Check(String),
    /// Exit 2: unreadable or malformed input, or unusable output.
    Input(String),
}

impl From<kstar::Error> for Failure {
    fn from(e: kstar::Error) -> Self {
        match e {
            kstar::Error::Invariant(_) => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

/// Version of the JSON report layouts described in `docs/schemas.md`.
pub const SCHEMA_VERSION: u32 = 1;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("KSTAR_LOG", "warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let report_only = |format: Option<Format>| match format {
        Some(Format::Csv) => Err(Failure::Input("reports are only available as JSON".into())),
        _ => Ok(()),
    };
    let table = cli.format.unwrap_or(Format::Csv);
    match cli.command {
        Command::Analyze { file, out } => {
            report_only(cli.format)?;
            let dm = read_json(&file)?;
            let (report, check) = report::analyze(&dm)?;
            write_json(out.as_deref(), &report)?;
            check
        }
        Command::Toric { file, out } => {
            report_only(cli.format)?;
            let fan = read_json(&file)?;
            let (report, check) = report::toric(&fan)?;
            write_json(out.as_deref(), &report)?;
            check
        }
        Command::ClassifyToric { max_index, io } => runs::run(runs::Job::Toric, max_index, table, io.out, io.resume),
        Command::ClassifyNontoric { max_index, cases, io } => {
            runs::run(runs::Job::Nontoric(cases), max_index, table, io.out, io.resume)
        }
        Command::Census { max_index, io } => runs::run(runs::Job::Census, max_index, table, io.out, io.resume),
        Command::Verify { count, seed, out } => {
            let summary = verify::run(count, seed);
            write_json(out.as_deref(), &summary)?;
            match summary.failed() {
                0 => Ok(()),
                n => Err(Failure::Check(format!("{n} of {count} instances failed"))),
            }
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Outcome<T> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
