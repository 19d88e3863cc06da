//! The `votecast` command-line pipeline.
//!
//! Each subcommand reads the previous stage's files, writes machine-readable
//! outputs plus a run manifest into the output directory, and prints a short
//! summary. [`run`] returns the process exit code.

/// `println!` that ignores a closed stdout, so piping into `head` does not
/// abort a run before its outputs are written.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if !$crate::QUIET.load(std::sync::atomic::Ordering::Relaxed) {
            let _ = writeln!(std::io::stdout().lock(), $($arg)*);
        }
    }};
}

mod cmd;
mod failure;
mod manifest;
mod output;
mod overlay;

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};

use clap::{Parser, Subcommand};

pub use failure::{Failure, EXIT_CONFIG, EXIT_DEGENERATE, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK};
pub use manifest::{FileDigest, RunManifest};

#[derive(Debug, Parser)]
#[command(name = "votecast", version, about = "Vote-share estimation from party-tagged tweets")]
pub struct Cli {
    /// TOML file whose values override the command-line flags. Keys may sit
    /// at the top level or under a table named after the subcommand.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Suppress the stdout summary; files and errors are unaffected.
    #[arg(short, long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Filter and party-match JSON-lines tweets into an unscored record table.
    Ingest(cmd::ingest::IngestArgs),
    /// Train one classifier per party group and report test metrics.
    Train(cmd::train::TrainArgs),
    /// Attach allegiance scores to ingested records.
    Score(cmd::score::ScoreArgs),
    /// Estimate vote shares per model and month with bootstrap quartiles.
    Model(cmd::model::ModelArgs),
    /// Sweep the ALT bounds over a grid.
    Sweep(cmd::sweep::SweepArgs),
    /// Compare user geography with the census and run panel resampling.
    Geo(cmd::geo::GeoArgs),
    /// Generate a synthetic corpus with planted ground truth.
    Synth(cmd::synth::SynthArgs),
    /// Collect the analytical outputs of a run into one report.
    Report(cmd::report::ReportArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Ingest(_) => "ingest",
            Command::Train(_) => "train",
            Command::Score(_) => "score",
            Command::Model(_) => "model",
            Command::Sweep(_) => "sweep",
            Command::Geo(_) => "geo",
            Command::Synth(_) => "synth",
            Command::Report(_) => "report",
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Errors are printed to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {f}");
            f.code()
        }
    }
}

static QUIET: AtomicBool = AtomicBool::new(false);

pub fn execute(cli: Cli) -> Result<(), Failure> {
    QUIET.store(cli.quiet, Ordering::Relaxed);
    let file = cli.config.as_deref().map(overlay::load).transpose()?;
    let name = cli.command.name();
    let apply = |layer: Option<&toml::Table>| layer.map(|t| overlay::section(t, name));
    let layer = apply(file.as_ref());
    match cli.command {
        Command::Ingest(a) => cmd::ingest::run(overlay::merge(a, layer.as_ref())?),
        Command::Train(a) => cmd::train::run(overlay::merge(a, layer.as_ref())?),
        Command::Score(a) => cmd::score::run(overlay::merge(a, layer.as_ref())?),
        Command::Model(a) => cmd::model::run(overlay::merge(a, layer.as_ref())?),
        Command::Sweep(a) => cmd::sweep::run(overlay::merge(a, layer.as_ref())?),
        Command::Geo(a) => cmd::geo::run(overlay::merge(a, layer.as_ref())?),
        Command::Synth(a) => cmd::synth::run(overlay::merge(a, layer.as_ref())?),
        Command::Report(a) => cmd::report::run(overlay::merge(a, layer.as_ref())?),
    }
}
