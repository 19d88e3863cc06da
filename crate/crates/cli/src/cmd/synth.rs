use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::anyhow;
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use votecast::allegiance::PartyGroup;
use votecast::geo::StateCode;
use votecast::models::write_records_csv;
use votecast::Coalition;
use votecast::synth::{
    distortion_config, generate_corpus, generate_labeled, write_text_corpus, Distortion, GeneratorConfig, GroundTruth,
    SynthError, TextConfig,
};

use super::train::artifact_name;
use crate::manifest::Recorder;
use crate::output::{create, ensure_dir, read_to_string, write_csv, write_json};
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    NegativityDominant,
    CapitalSkew,
    HyperactiveMinority,
}

impl From<Variant> for Distortion {
    fn from(v: Variant) -> Self {
        match v {
            Variant::NegativityDominant => Distortion::NegativityDominant,
            Variant::CapitalSkew => Distortion::CapitalSkew,
            Variant::HyperactiveMinority => Distortion::HyperactiveMinority,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthArgs {
    /// Generator settings (TOML); flags below override it.
    #[arg(long)]
    pub generator: Option<PathBuf>,
    #[arg(long)]
    pub n_users: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Planted ruling-coalition share among supporters.
    #[arg(long)]
    pub share: Option<f64>,
    #[arg(long, value_enum)]
    pub variant: Option<Variant>,
    /// Emit raw JSON-lines tweets instead of a scored table.
    #[arg(long)]
    pub text: bool,
    /// Fraction of tweets in English (text mode).
    #[arg(long, default_value_t = 0.0)]
    pub foreign_fraction: f64,
    /// Labeled examples written per party group (text mode).
    #[arg(long, default_value_t = 0)]
    pub labeled: usize,
    #[arg(long, env = "VOTECAST_OUT_DIR", default_value = "out")]
    pub out_dir: PathBuf,
}

/// Ground truth without the per-user table.
#[derive(Serialize)]
struct TruthSummary<'a> {
    config: &'a GeneratorConfig,
    variant: Option<Variant>,
    configured_share: f64,
    realized_share: Option<f64>,
    n_users: usize,
    n_records: usize,
    state_users: BTreeMap<StateCode, usize>,
    geo_state_users: BTreeMap<StateCode, usize>,
}

#[derive(Serialize)]
struct UserRow<'a> {
    user_id: &'a str,
    state: &'a str,
    support: &'a str,
    tweets: u32,
    geotagged: bool,
}

fn synth_failure(e: SynthError) -> Failure {
    match e {
        SynthError::InvalidConfig(_) | SynthError::Infeasible(_) | SynthError::Toml(_) => Failure::config(e),
        e => Failure::internal(e),
    }
}

fn build_config(args: &SynthArgs, rec: &mut Recorder) -> Result<GeneratorConfig, Failure> {
    let mut cfg = match &args.generator {
        Some(p) => {
            rec.input(p)?;
            GeneratorConfig::from_toml(&read_to_string(p)?).map_err(synth_failure)?
        }
        None => GeneratorConfig::default(),
    };
    if let Some(n) = args.n_users {
        cfg.n_users = n;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(s) = args.share {
        cfg.true_ruling_share = s;
    }
    if let Some(v) = args.variant {
        cfg = distortion_config(&cfg, v.into()).map_err(synth_failure)?;
    }
    cfg.validate().map_err(synth_failure)?;
    Ok(cfg)
}

pub fn run(args: SynthArgs) -> Result<(), Failure> {
    let mut rec = Recorder::new("synth", &args);
    let cfg = build_config(&args, &mut rec)?;
    rec.seed("generator", cfg.seed);
    if !(0.0..=1.0).contains(&args.foreign_fraction) {
        return Err(Failure::config(anyhow!("foreign fraction must lie in [0, 1]")));
    }
    ensure_dir(&args.out_dir)?;

    rec.stage("generate");
    let truth: GroundTruth = if args.text {
        let text = TextConfig { foreign_fraction: args.foreign_fraction, ..Default::default() };
        let path = args.out_dir.join("synth_tweets.jsonl");
        let mut out = create(&path)?;
        let truth = write_text_corpus(&cfg, &text, &mut out).map_err(synth_failure)?;
        std::io::Write::flush(&mut out).map_err(Failure::internal)?;
        drop(out);
        rec.output(&path)?;
        if args.labeled > 0 {
            let dir = args.out_dir.join("labeled");
            for (i, group) in PartyGroup::standard().iter().enumerate() {
                let data = generate_labeled(args.labeled, cfg.seed.wrapping_add(1 + i as u64), &text);
                let p = dir.join(artifact_name(group).replace(".json", ".csv"));
                write_csv(&p, &data)?;
                rec.output(&p)?;
            }
        }
        truth
    } else {
        let (records, truth) = generate_corpus(&cfg).map_err(synth_failure)?;
        let path = args.out_dir.join("synth_scored.csv");
        let mut out = create(&path)?;
        write_records_csv(&mut out, &records).map_err(Failure::internal)?;
        std::io::Write::flush(&mut out).map_err(Failure::internal)?;
        drop(out);
        rec.output(&path)?;
        truth
    };
    rec.count("users", truth.users.len() as u64);
    rec.count("records", truth.n_records as u64);

    let summary = TruthSummary {
        config: &cfg,
        variant: args.variant,
        configured_share: truth.configured_share,
        realized_share: truth.realized_share,
        n_users: truth.users.len(),
        n_records: truth.n_records,
        state_users: truth.state_users.clone(),
        geo_state_users: truth.geo_state_users.clone(),
    };
    let json = args.out_dir.join("ground_truth.json");
    write_json(&json, &summary)?;
    let users: Vec<UserRow> = truth
        .users
        .iter()
        .map(|u| UserRow {
            user_id: &u.user_id,
            state: u.state.code(),
            support: match u.support() {
                Some(Coalition::Ruling) => "ruling",
                Some(Coalition::Opposition) => "opposition",
                None => "noise",
            },
            tweets: u.tweets,
            geotagged: u.geotagged,
        })
        .collect();
    let csv = args.out_dir.join("ground_truth_users.csv");
    write_csv(&csv, &users)?;
    rec.output(&json)?;
    rec.output(&csv)?;

    say!(
        "{} users, {} records; planted share {:.4}, realized {}",
        summary.n_users,
        summary.n_records,
        summary.configured_share,
        summary.realized_share.map(|s| format!("{s:.4}")).unwrap_or_else(|| "undefined".into())
    );
    if args.text {
        say!("tweets fall in {}; pass --start/--end to ingest to keep the whole month", cfg.start_month);
    }
    rec.finish(&args.out_dir)?;
    Ok(())
}
