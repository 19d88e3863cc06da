use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;
use serde::{Deserialize, Serialize};
use votecast::corpus::monthly_partition;
use votecast::models::{estimate_all, AltBounds, ModelId, ModelInput, ModelSpec};
use votecast::reference::ReferenceConstants;
use votecast::stats::{bootstrap_many, BootstrapConfig};

use super::{load_scored, parse_months};
use crate::manifest::Recorder;
use crate::output::{read_to_string, write_csv, write_json};
use crate::Failure;

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelArgs {
    /// Scored table written by `score`.
    pub input: PathBuf,
    /// Models to run (CVT, CVU, CAT, CAU, GVT, GVU, GAT, GAU, ALT); all by default.
    #[arg(long = "model", value_delimiter = ',')]
    pub models: Vec<String>,
    /// Months to report (YYYY-MM); all months present by default.
    #[arg(long = "month", value_delimiter = ',')]
    pub months: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    pub resamples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.6)]
    pub x_low: f64,
    #[arg(long, default_value_t = 1.0)]
    pub x_upp: f64,
    /// Reference constants file (TOML); defaults to the bundled one.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    #[arg(long, env = "VOTECAST_OUT_DIR", default_value = "out")]
    pub out_dir: PathBuf,
}

/// One model in one month. Quartiles are absent when the bootstrap failed;
/// everything but the labels is absent when the estimate is undefined.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateRow {
    pub model: String,
    pub month: String,
    pub share: Option<f64>,
    pub median: Option<f64>,
    pub q1: Option<f64>,
    pub q3: Option<f64>,
    pub precision_pp: Option<f64>,
    pub n_resamples: usize,
    pub seed: u64,
    pub records: Option<u64>,
    pub users: Option<u64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimatesFile {
    pub reference: ReferenceConstants,
    pub x_low: f64,
    pub x_upp: f64,
    pub rows: Vec<EstimateRow>,
}

pub(crate) fn parse_models(names: &[String]) -> Result<Vec<ModelId>, Failure> {
    if names.is_empty() || names.iter().any(|n| n.eq_ignore_ascii_case("all")) {
        return Ok(ModelId::ALL.to_vec());
    }
    names.iter().map(|n| n.parse::<ModelId>().map_err(|e| Failure::config(anyhow!("{e}")))).collect()
}

pub(crate) fn load_reference(path: Option<&std::path::Path>) -> Result<ReferenceConstants, Failure> {
    match path {
        Some(p) => ReferenceConstants::from_toml(&read_to_string(p)?).map_err(|e| Failure::config(anyhow!("{}: {e}", p.display()))),
        None => Ok(ReferenceConstants::default()),
    }
}

pub fn run(args: ModelArgs) -> Result<(), Failure> {
    let mut rec = Recorder::new("model", &args);
    rec.seed("bootstrap", args.seed);
    let ids = parse_models(&args.models)?;
    let months = parse_months(&args.months)?;
    let bounds = AltBounds::from_f64(args.x_low, args.x_upp).map_err(Failure::config)?;
    if args.resamples == 0 {
        return Err(Failure::config(anyhow!("resamples must be positive")));
    }
    let reference = load_reference(args.reference.as_deref())?;
    if let Some(p) = &args.reference {
        rec.input(p)?;
    }
    rec.input(&args.input)?;
    let records = load_scored(&args.input)?;
    rec.count("records", records.len() as u64);
    let mut by_month = monthly_partition(records);
    if !months.is_empty() {
        by_month.retain(|m, _| months.contains(m));
        if let Some(m) = months.iter().find(|m| !by_month.contains_key(m)) {
            return Err(Failure::input(anyhow!("no records in {m}")));
        }
    }
    let specs: Vec<ModelSpec<f64>> = ids.iter().map(|&id| ModelSpec { id, bounds: bounds.clone() }).collect();
    let cfg = BootstrapConfig { n_resamples: args.resamples, seed: args.seed };

    let mut rows = Vec::new();
    for (month, recs) in &by_month {
        rec.stage(&format!("bootstrap {month}"));
        let input = ModelInput::from_records(recs);
        let points = estimate_all(&specs, &input, None);
        let boots = bootstrap_many(&input, &specs, &cfg);
        for ((spec, point), boot) in specs.iter().zip(points).zip(boots) {
            let mut row = EstimateRow {
                model: spec.id.name().to_string(),
                month: month.to_string(),
                share: None,
                median: None,
                q1: None,
                q3: None,
                precision_pp: None,
                n_resamples: cfg.n_resamples,
                seed: cfg.seed,
                records: None,
                users: None,
                error: None,
            };
            match point {
                Ok(s) => {
                    row.share = Some(s.ruling);
                    row.records = Some(s.records);
                    row.users = Some(s.users);
                    match boot {
                        Ok(b) => {
                            row.median = Some(b.median);
                            row.q1 = Some(b.q1);
                            row.q3 = Some(b.q3);
                            row.precision_pp = Some(b.precision_pp());
                        }
                        Err(e) => row.error = Some(e.to_string()),
                    }
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            rows.push(row);
        }
    }
    let failed = rows.iter().filter(|r| r.share.is_none()).count();
    for r in rows.iter().filter(|r| r.error.is_some()) {
        log::warn!("{} {}: {}", r.model, r.month, r.error.as_deref().unwrap_or_default());
    }
    rec.count("estimates", rows.len() as u64);
    rec.count("undefined", failed as u64);

    let file = EstimatesFile { reference: reference.clone(), x_low: args.x_low, x_upp: args.x_upp, rows };
    let json = args.out_dir.join("estimates.json");
    write_json(&json, &file)?;
    let csv = args.out_dir.join("estimates.csv");
    write_csv(&csv, &file.rows)?;
    rec.output(&json)?;
    rec.output(&csv)?;

    say!("official {:.2}%  polls {:.1}% ± {:.1}", reference.official_ruling_pct, reference.poll_ruling_pct, reference.poll_band_pp / 2.0);
    for r in &file.rows {
        match (r.share, r.median) {
            (Some(s), Some(m)) => say!(
                "{} {:<4} share {:6.2}%  median {:6.2}%  IQR {:5.2} pp  users {}",
                r.month,
                r.model,
                100.0 * s,
                100.0 * m,
                r.precision_pp.unwrap_or(f64::NAN),
                r.users.unwrap_or(0)
            ),
            _ => say!("{} {:<4} undefined: {}", r.month, r.model, r.error.as_deref().unwrap_or_default()),
        }
    }
    rec.finish(&args.out_dir)?;
    if failed == file.rows.len() {
        return Err(Failure::Degenerate(anyhow!("every estimate is undefined")));
    }
    Ok(())
}
