use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;
use serde::{Deserialize, Serialize};
use votecast::allegiance::{MultinomialNb, PartyGroup, Scorer};
use votecast::corpus::read_matched_csv;
use votecast::models::write_records_csv;

use crate::manifest::Recorder;
use crate::output::{create, expand_inputs, open, read_to_string};
use crate::Failure;

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoreArgs {
    /// Table written by `ingest`.
    pub input: PathBuf,
    /// Directory of model artifacts written by `train`; defaults to
    /// `<out-dir>/models`.
    #[arg(long)]
    pub models: Option<PathBuf>,
    #[arg(long, env = "VOTECAST_OUT_DIR", default_value = "out")]
    pub out_dir: PathBuf,
}

fn group_of(path: &std::path::Path) -> Result<PartyGroup, Failure> {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    if stem == "default" {
        return Ok(PartyGroup::Default);
    }
    stem.parse().map_err(|e| Failure::input(anyhow!("{}: {e}", path.display())))
}

pub fn run(args: ScoreArgs) -> Result<(), Failure> {
    let mut rec = Recorder::new("score", &args);
    let dir = args.models.clone().unwrap_or_else(|| args.out_dir.join("models"));
    let mut groups = Vec::new();
    for path in expand_inputs(&dir, "json")? {
        rec.input(&path)?;
        let model = MultinomialNb::<f64>::from_json(&read_to_string(&path)?)
            .map_err(|e| Failure::input(anyhow!("{}: {e}", path.display())))?;
        groups.push((group_of(&path)?, model));
    }
    if groups.is_empty() {
        return Err(Failure::input(anyhow!("no model artifacts in {}", dir.display())));
    }
    let scorer = Scorer::new(groups).map_err(Failure::input)?;

    rec.input(&args.input)?;
    let tweets = read_matched_csv(open(&args.input)?).map_err(Failure::from_lib)?;
    if tweets.is_empty() {
        return Err(Failure::input(anyhow!("{}: 0 records", args.input.display())));
    }
    rec.stage("score");
    let records = scorer.score(&tweets).map_err(Failure::input)?;
    rec.count("records", records.len() as u64);
    rec.stage("write");
    let out = args.out_dir.join("scored.csv");
    write_records_csv(create(&out)?, &records).map_err(|e| Failure::internal(anyhow!("{}: {e}", out.display())))?;
    rec.output(&out)?;
    let mean = records.iter().map(|r| r.allegiance).sum::<f64>() / records.len() as f64;
    say!("scored {} records (mean allegiance {mean:.3}) -> {}", records.len(), out.display());
    rec.finish(&args.out_dir)?;
    Ok(())
}
