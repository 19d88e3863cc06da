use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;
use serde::{Deserialize, Serialize};
use votecast::corpus::monthly_partition;
use votecast::models::{alt_grid_sweep, grid, CellStatus, ModelInput, SweepGrid};
use votecast::stats::BootstrapConfig;

use super::{load_scored, parse_months};
use crate::manifest::Recorder;
use crate::output::{write_csv, write_json};
use crate::Failure;

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepArgs {
    /// Scored table written by `score`.
    pub input: PathBuf,
    /// Months to sweep (YYYY-MM); all months present by default.
    #[arg(long = "month", value_delimiter = ',')]
    pub months: Vec<String>,
    /// Lower-bound grid as `start:end:step`.
    #[arg(long, default_value = "0.1:0.7:0.05")]
    pub x_low: String,
    /// Upper-bound grid as `start:end:step`.
    #[arg(long, default_value = "0.7:1.0:0.05")]
    pub x_upp: String,
    #[arg(long, default_value_t = 1000)]
    pub resamples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "VOTECAST_OUT_DIR", default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Serialize)]
struct CellRow<'a> {
    month: String,
    x_low: f64,
    x_upp: f64,
    status: &'static str,
    share: Option<f64>,
    median: Option<f64>,
    q1: Option<f64>,
    q3: Option<f64>,
    precision_pp: Option<f64>,
    users: Option<u64>,
    reason: Option<&'a str>,
}

#[derive(Serialize)]
struct MonthSweep {
    month: String,
    grid: SweepGrid,
}

pub(crate) fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Failure::config(anyhow!("grid `{spec}` must be start:end:step with 0 <= start <= end <= 1, step > 0"));
    let [a, b, s] = parts.as_slice() else { return Err(bad()) };
    let (a, b, s): (f64, f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?, s.parse().map_err(|_| bad())?);
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || a > b || s <= 0.0 {
        return Err(bad());
    }
    // Round to the step's precision so that e.g. 0.7 + 0.05*6 prints as 1.0.
    Ok(grid(a, b, s).into_iter().map(|v| (v * 1e9).round() / 1e9).collect())
}

pub fn run(args: SweepArgs) -> Result<(), Failure> {
    let mut rec = Recorder::new("sweep", &args);
    rec.seed("bootstrap", args.seed);
    let lows = parse_grid(&args.x_low)?;
    let upps = parse_grid(&args.x_upp)?;
    let months = parse_months(&args.months)?;
    if args.resamples == 0 {
        return Err(Failure::config(anyhow!("resamples must be positive")));
    }
    rec.input(&args.input)?;
    let mut by_month = monthly_partition(load_scored(&args.input)?);
    if !months.is_empty() {
        by_month.retain(|m, _| months.contains(m));
        if by_month.is_empty() {
            return Err(Failure::input(anyhow!("no records in the requested months")));
        }
    }
    let cfg = BootstrapConfig { n_resamples: args.resamples, seed: args.seed };
    let mut sweeps = Vec::new();
    for (month, recs) in &by_month {
        rec.stage(&format!("sweep {month}"));
        let g = alt_grid_sweep(&ModelInput::from_records(recs), &lows, &upps, &cfg).map_err(Failure::from_lib)?;
        sweeps.push(MonthSweep { month: month.to_string(), grid: g });
    }
    let rows: Vec<CellRow> = sweeps
        .iter()
        .flat_map(|s| {
            s.grid.cells.iter().map(move |c| CellRow {
                month: s.month.clone(),
                x_low: c.x_low,
                x_upp: c.x_upp,
                status: match c.status {
                    CellStatus::Ok => "ok",
                    CellStatus::Invalid => "invalid",
                    CellStatus::Undefined(_) => "undefined",
                },
                share: c.share,
                median: c.median,
                q1: c.q1,
                q3: c.q3,
                precision_pp: c.precision_pp,
                users: c.users,
                reason: match &c.status {
                    CellStatus::Undefined(r) => Some(r.as_str()),
                    _ => None,
                },
            })
        })
        .collect();
    let ok = rows.iter().filter(|r| r.status == "ok").count();
    rec.count("cells", rows.len() as u64);
    rec.count("cells_ok", ok as u64);
    let json = args.out_dir.join("sweep.json");
    write_json(&json, &sweeps)?;
    let csv = args.out_dir.join("sweep.csv");
    write_csv(&csv, &rows)?;
    rec.output(&json)?;
    rec.output(&csv)?;
    for s in &sweeps {
        let users: Vec<u64> = s.grid.cells.iter().filter_map(|c| c.users).collect();
        let best = s.grid.most_precise();
        say!(
            "{}: {} cells, users {}..{}{}",
            s.month,
            s.grid.cells.len(),
            users.iter().min().unwrap_or(&0),
            users.iter().max().unwrap_or(&0),
            best.map(|c| format!(", narrowest IQR {:.2} pp at ({:.2}, {:.2})", c.precision_pp.unwrap_or(f64::NAN), c.x_low, c.x_upp))
                .unwrap_or_default()
        );
    }
    rec.finish(&args.out_dir)?;
    if ok == 0 {
        return Err(Failure::Degenerate(anyhow!("no grid cell has a defined estimate")));
    }
    Ok(())
}
