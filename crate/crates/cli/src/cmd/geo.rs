use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;
use serde::{Deserialize, Serialize};
use votecast::geo::{
    aggregate_users_by_state, population_2020, population_distribution, population_weighted_resample,
    read_census_csv, representativeness_report, total_variation, PanelConfig, Region, RepresentativenessReport,
    StateCode,
};
use votecast::models::ModelSpec;

use super::model::parse_models;
use super::{load_scored, select_month};
use crate::manifest::Recorder;
use crate::output::{open, write_csv, write_json};
use crate::Failure;

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeoArgs {
    /// Scored table written by `score`.
    pub input: PathBuf,
    /// Census CSV (`state_code,population[,internet_users]`); defaults to
    /// the bundled 2020 population table.
    #[arg(long)]
    pub census: Option<PathBuf>,
    /// Restrict to one month (YYYY-MM).
    #[arg(long)]
    pub month: Option<String>,
    /// Models re-estimated on each panel; all by default.
    #[arg(long = "model", value_delimiter = ',')]
    pub models: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    pub panel_size: usize,
    #[arg(long, default_value_t = 1000)]
    pub repetitions: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "VOTECAST_OUT_DIR", default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Serialize)]
struct PanelRow {
    model: String,
    median: Option<f64>,
    q1: Option<f64>,
    q3: Option<f64>,
    precision_pp: Option<f64>,
    error: Option<String>,
}

#[derive(Serialize)]
struct GeoFile<'a> {
    month: Option<String>,
    representativeness: &'a RepresentativenessReport,
    panel: PanelSection<'a>,
}

#[derive(Serialize)]
struct PanelSection<'a> {
    config: PanelConfig,
    quotas: &'a std::collections::BTreeMap<StateCode, usize>,
    dropped_states: &'a [StateCode],
    total_variation: f64,
    results: &'a [PanelRow],
}

#[derive(Serialize)]
struct RegionRow {
    region: String,
    population_pct: f64,
    internet_pct: Option<f64>,
    twitter_pct: f64,
    residual_population_twitter: f64,
    residual_population_internet: Option<f64>,
}

pub fn run(args: GeoArgs) -> Result<(), Failure> {
    let mut rec = Recorder::new("geo", &args);
    rec.seed("panel", args.seed);
    let ids = parse_models(&args.models)?;
    let month = args.month.as_deref().map(|m| m.parse().map_err(|e| Failure::config(anyhow!("month `{m}`: {e}")))).transpose()?;
    if args.repetitions == 0 || args.panel_size == 0 {
        return Err(Failure::config(anyhow!("panel size and repetitions must be positive")));
    }
    let census = match &args.census {
        Some(p) => {
            rec.input(p)?;
            read_census_csv(open(p)?).map_err(Failure::from_lib)?
        }
        None => population_2020(),
    };
    rec.input(&args.input)?;
    let records = select_month(&load_scored(&args.input)?, month)?;
    rec.count("records", records.len() as u64);

    rec.stage("representativeness");
    let twitter = aggregate_users_by_state(&records).map_err(Failure::from_lib)?;
    let report = representativeness_report(&census, &twitter).map_err(Failure::from_lib)?;

    rec.stage("panels");
    let target = population_distribution(&census).map_err(Failure::from_lib)?;
    let specs: Vec<ModelSpec<f64>> = ids.into_iter().map(ModelSpec::new).collect();
    let cfg = PanelConfig { panel_size: args.panel_size, repetitions: args.repetitions, seed: args.seed };
    let panel = population_weighted_resample(&records, &target, &specs, &cfg).map_err(Failure::from_lib)?;
    let tv = total_variation(&panel.drawn().map_err(Failure::from_lib)?, &target);
    let rows: Vec<PanelRow> = specs
        .iter()
        .zip(&panel.results)
        .map(|(s, r)| match r {
            Ok(b) => PanelRow {
                model: s.id.name().into(),
                median: Some(b.median),
                q1: Some(b.q1),
                q3: Some(b.q3),
                precision_pp: Some(b.precision_pp()),
                error: None,
            },
            Err(e) => PanelRow { model: s.id.name().into(), median: None, q1: None, q3: None, precision_pp: None, error: Some(e.to_string()) },
        })
        .collect();

    let file = GeoFile {
        month: month.map(|m| m.to_string()),
        representativeness: &report,
        panel: PanelSection { config: cfg, quotas: &panel.quotas, dropped_states: &panel.dropped_states, total_variation: tv, results: &rows },
    };
    let json = args.out_dir.join("geo_report.json");
    write_json(&json, &file)?;
    let regions: Vec<RegionRow> = StateCode::ALL
        .iter()
        .map(|&s| {
            let r = Region::State(s);
            RegionRow {
                region: s.code().into(),
                population_pct: report.population.state(s),
                internet_pct: report.internet.as_ref().map(|d| d.state(s)),
                twitter_pct: report.twitter.state(s),
                residual_population_twitter: report.residual_population_twitter.get(r).unwrap_or(0.0),
                residual_population_internet: report.residual_population_internet.as_ref().and_then(|x| x.get(r)),
            }
        })
        .collect();
    let csv = args.out_dir.join("geo_regions.csv");
    write_csv(&csv, &regions)?;
    let panel_csv = args.out_dir.join("geo_panel.csv");
    write_csv(&panel_csv, &rows)?;
    for p in [&json, &csv, &panel_csv] {
        rec.output(p)?;
    }

    let c = &report.per_state;
    say!("r(population, twitter) = {:.3}; merged GMC {:.3}", c.population_twitter.r, report.merged.population_twitter.r);
    if let (Some(a), Some(b)) = (&c.population_internet, &c.internet_twitter) {
        say!("r(population, internet) = {:.3}; r(internet, twitter) = {:.3}", a.r, b.r);
    }
    if let Some((region, v)) = report.max_residual_outside_gmc {
        say!("largest residual outside Greater Mexico City: {region} {v:+.2} pp");
    }
    say!("panels of {} users x {} (TV distance to target {:.4})", args.panel_size, args.repetitions, tv);
    for r in &rows {
        match r.median {
            Some(m) => say!("  {:<4} median {:6.2}%  IQR {:5.2} pp", r.model, 100.0 * m, r.precision_pp.unwrap_or(f64::NAN)),
            None => say!("  {:<4} undefined: {}", r.model, r.error.as_deref().unwrap_or_default()),
        }
    }
    rec.finish(&args.out_dir)?;
    if rows.iter().all(|r| r.median.is_none()) {
        return Err(Failure::Degenerate(anyhow!("every panel estimate is undefined")));
    }
    Ok(())
}
