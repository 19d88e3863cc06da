use std::io::BufReader;
use std::path::PathBuf;

use anyhow::anyhow;
use chrono::{DateTime, Utc};
use clap::Args;
use serde::{Deserialize, Serialize};
use votecast::corpus::{write_matched_csv, IngestConfig, IngestReport, Ingestor, QuerySet, SPANISH};
use votecast::TimeWindow;

use crate::manifest::Recorder;
use crate::output::{create, ensure_dir, expand_inputs, open, write_json};
use crate::Failure;

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IngestArgs {
    /// JSON-lines files, or directories searched for `*.jsonl`.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Party query specs (a JSON file or a directory of them); defaults to
    /// the bundled set.
    #[arg(long)]
    pub queries: Option<PathBuf>,
    /// Window start (RFC 3339); defaults to 2020-12-01T05:00:00Z.
    #[arg(long)]
    pub start: Option<String>,
    /// Window end, exclusive (RFC 3339); defaults to 2021-05-31T05:00:00Z.
    #[arg(long)]
    pub end: Option<String>,
    #[arg(long, default_value = SPANISH)]
    pub language: String,
    #[arg(long, env = "VOTECAST_OUT_DIR", default_value = "out")]
    pub out_dir: PathBuf,
}

fn instant(s: &str) -> Result<DateTime<Utc>, Failure> {
    DateTime::parse_from_rfc3339(s)
        .map(|t| t.with_timezone(&Utc))
        .map_err(|e| Failure::config(anyhow!("bad timestamp `{s}`: {e}")))
}

#[derive(Serialize)]
struct StatsFile<'a> {
    #[serde(flatten)]
    report: &'a IngestReport,
    window_start: String,
    window_end: String,
}

pub fn run(args: IngestArgs) -> Result<(), Failure> {
    let mut rec = Recorder::new("ingest", &args);
    let default = TimeWindow::election_2021();
    let start = args.start.as_deref().map(instant).transpose()?.unwrap_or(default.start);
    let end = args.end.as_deref().map(instant).transpose()?.unwrap_or(default.end);
    let window = TimeWindow::new(start, end).ok_or_else(|| Failure::config(anyhow!("window end precedes start")))?;
    let queries = match &args.queries {
        Some(p) => {
            rec.input(p).ok();
            QuerySet::load(p).map_err(Failure::from_lib)?
        }
        None => QuerySet::bundled(),
    };
    let mut files = Vec::new();
    for p in &args.inputs {
        files.extend(expand_inputs(p, "jsonl")?);
    }
    if files.is_empty() {
        return Err(Failure::input(anyhow!("no .jsonl inputs found")));
    }

    rec.stage("ingest");
    let mut ing = Ingestor::new(IngestConfig { window, language: args.language.clone(), ..IngestConfig::new(queries) });
    for f in &files {
        rec.input(f)?;
        ing.ingest_reader(&f.display().to_string(), BufReader::new(open(f)?)).map_err(Failure::from_lib)?;
    }
    let (records, report) = ing.finish();
    let c = &report.counts;
    for (k, v) in [
        ("lines", c.lines),
        ("malformed", c.malformed),
        ("rejected", c.rejected),
        ("wrong_language", c.wrong_language),
        ("out_of_window", c.out_of_window),
        ("unmatched", c.unmatched),
        ("duplicates", c.duplicates),
        ("records", c.emitted),
    ] {
        rec.count(k, v);
    }
    say!(
        "{} lines, {} malformed, {} rejected, {} not {}, {} outside window, {} unmatched, {} duplicates -> {} records",
        c.lines, c.malformed, c.rejected, c.wrong_language, args.language, c.out_of_window, c.unmatched, c.duplicates, c.emitted
    );
    if records.is_empty() {
        return Err(Failure::input(anyhow!("0 records survived filtering")));
    }

    rec.stage("write");
    ensure_dir(&args.out_dir)?;
    let table = args.out_dir.join("matched.csv");
    write_matched_csv(create(&table)?, &records).map_err(|e| Failure::internal(anyhow!("{}: {e}", table.display())))?;
    let stats = args.out_dir.join("corpus_stats.json");
    write_json(&stats, &StatsFile { report: &report, window_start: window.start.to_rfc3339(), window_end: window.end.to_rfc3339() })?;
    rec.output(&table)?;
    rec.output(&stats)?;
    say!(
        "{} users, {} geotagged tweets ({:.2}%) -> {}",
        report.stats.unique_users,
        report.stats.geo_tweets,
        100.0 * report.stats.geo_tweet_ratio,
        table.display()
    );
    rec.finish(&args.out_dir)?;
    Ok(())
}
