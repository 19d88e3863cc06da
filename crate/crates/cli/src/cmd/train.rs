use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;
use serde::{Deserialize, Serialize};
use votecast::allegiance::{
    evaluate, read_labeled_csv, split_train_test, train_nb, Label, NbParams, PartyGroup,
};
use votecast::corpus::read_matched_csv;

use crate::manifest::Recorder;
use crate::output::{create, ensure_dir, open, write_csv, write_json};
use crate::Failure;

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainArgs {
    /// Labeled data per party group, as `GROUP=path.csv` (e.g.
    /// `MORENA+PT=morena.csv`; `*` trains the fallback model).
    #[arg(long = "data", required = true)]
    pub data: Vec<String>,
    /// Fraction of each class used for training.
    #[arg(long, default_value_t = 0.85)]
    pub train_fraction: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1)]
    pub ngram_max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Ingested table used to count tweets per group in the metrics table.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long, env = "VOTECAST_OUT_DIR", default_value = "out")]
    pub out_dir: PathBuf,
}

/// One row of the training summary.
#[derive(Debug, Serialize)]
pub struct MetricsRow {
    pub party: String,
    pub tweets: Option<u64>,
    pub messages_n: usize,
    pub messages_p: usize,
    pub f1_n: f64,
    pub f1_p: f64,
    pub auc: f64,
}

/// File name of a group's model artifact.
pub fn artifact_name(group: &PartyGroup) -> String {
    match group {
        PartyGroup::Default => "default.json".into(),
        g => format!("{g}.json"),
    }
}

pub fn run(args: TrainArgs) -> Result<(), Failure> {
    let mut rec = Recorder::new("train", &args);
    rec.seed("split", args.seed);
    let mut groups: Vec<(PartyGroup, PathBuf)> = Vec::new();
    for spec in &args.data {
        let (g, p) = spec.split_once('=').ok_or_else(|| Failure::config(anyhow!("expected GROUP=path, got `{spec}`")))?;
        let group: PartyGroup = g.parse().map_err(|e| Failure::config(anyhow!("{e}")))?;
        if groups.iter().any(|(h, _)| *h == group) {
            return Err(Failure::config(anyhow!("group {group} given twice")));
        }
        groups.push((group, PathBuf::from(p)));
    }
    let tweets_by_party = match &args.corpus {
        Some(p) => {
            rec.input(p)?;
            let mut counts: BTreeMap<votecast::Party, u64> = BTreeMap::new();
            for t in read_matched_csv(open(p)?).map_err(Failure::from_lib)? {
                *counts.entry(t.party).or_default() += 1;
            }
            Some(counts)
        }
        None => None,
    };
    let params = NbParams { alpha: args.alpha, ngram_max: args.ngram_max };
    let models_dir = args.out_dir.join("models");
    ensure_dir(&models_dir)?;

    let mut rows = Vec::new();
    for (group, path) in &groups {
        rec.stage(&format!("train {group}"));
        rec.input(path)?;
        let examples = read_labeled_csv(open(path)?).map_err(|e| Failure::input(anyhow!("{}: {e}", path.display())))?;
        let (train, test) = split_train_test(&examples, args.train_fraction, args.seed).map_err(|e| Failure::input(anyhow!("{group}: {e}")))?;
        let model = train_nb::<f64>(&train, params).map_err(|e| Failure::input(anyhow!("{group}: {e}")))?;
        let metrics = evaluate(&model, &test).map_err(|e| Failure::input(anyhow!("{group}: {e}")))?;
        let artifact = models_dir.join(artifact_name(group));
        use std::io::Write;
        let json = model.to_json().map_err(Failure::internal)?;
        let mut w = create(&artifact)?;
        w.write_all(json.as_bytes()).and_then(|_| w.write_all(b"\n")).and_then(|_| w.flush()).map_err(Failure::internal)?;
        rec.output(&artifact)?;
        let count = |l: Label| examples.iter().filter(|e| e.label == l).count();
        let tweets = tweets_by_party.as_ref().map(|c| match group {
            PartyGroup::Parties(ps) => ps.iter().map(|p| c.get(p).copied().unwrap_or(0)).sum(),
            PartyGroup::Default => 0,
        });
        rows.push(MetricsRow {
            party: group.to_string(),
            tweets,
            messages_n: count(Label::Negative),
            messages_p: count(Label::Positive),
            f1_n: metrics.f1_n,
            f1_p: metrics.f1_p,
            auc: metrics.roc_auc,
        });
        rec.count(&format!("examples {group}"), examples.len() as u64);
        say!(
            "{group:<14} n={:<5} p={:<5} F1_n={:.2} F1_p={:.2} AUC={:.2}",
            count(Label::Negative),
            count(Label::Positive),
            metrics.f1_n,
            metrics.f1_p,
            metrics.roc_auc
        );
    }
    let csv_path = args.out_dir.join("training_metrics.csv");
    write_csv(&csv_path, &rows)?;
    let json_path = args.out_dir.join("training_metrics.json");
    write_json(&json_path, &rows)?;
    rec.output(&csv_path)?;
    rec.output(&json_path)?;
    rec.finish(&args.out_dir)?;
    Ok(())
}
