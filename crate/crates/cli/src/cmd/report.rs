use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::model::{EstimateRow, EstimatesFile};
use crate::manifest::Recorder;
use crate::output::{create, read_to_string, write_json};
use crate::Failure;

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportArgs {
    /// Estimates written by `model`; defaults to `<out-dir>/estimates.json`.
    #[arg(long)]
    pub estimates: Option<PathBuf>,
    /// Sweep written by `sweep`; read from `<out-dir>/sweep.json` when present.
    #[arg(long)]
    pub sweep: Option<PathBuf>,
    /// Geo report written by `geo`; read from `<out-dir>/geo_report.json` when present.
    #[arg(long)]
    pub geo: Option<PathBuf>,
    #[arg(long, env = "VOTECAST_OUT_DIR", default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Serialize)]
struct ReportRow {
    month: String,
    model: String,
    share_pct: Option<f64>,
    median_pct: Option<f64>,
    precision_pp: Option<f64>,
    /// Estimate minus the official result, percentage points.
    error_pp: Option<f64>,
    within_poll_band: Option<bool>,
    error: Option<String>,
}

#[derive(Debug, Serialize)]
struct Report {
    election: String,
    official_ruling_pct: f64,
    poll_ruling_pct: f64,
    poll_band_pp: f64,
    rows: Vec<ReportRow>,
    sweep: Option<Value>,
    geo: Option<Value>,
}

fn row(r: &EstimateRow, file: &EstimatesFile) -> ReportRow {
    let c = &file.reference;
    let est = r.median.or(r.share).map(|v| 100.0 * v);
    ReportRow {
        month: r.month.clone(),
        model: r.model.clone(),
        share_pct: r.share.map(|v| 100.0 * v),
        median_pct: r.median.map(|v| 100.0 * v),
        precision_pp: r.precision_pp,
        error_pp: est.map(|e| e - c.official_ruling_pct),
        within_poll_band: est.map(|e| (e - c.poll_ruling_pct).abs() <= c.poll_band_pp / 2.0),
        error: r.error.clone(),
    }
}

fn read_optional(explicit: Option<&PathBuf>, default: PathBuf, rec: &mut Recorder) -> Result<Option<Value>, Failure> {
    let path = match explicit {
        Some(p) => p.clone(),
        None if default.exists() => default,
        None => return Ok(None),
    };
    rec.input(&path)?;
    let v = serde_json::from_str(&read_to_string(&path)?).map_err(|e| Failure::input(anyhow!("{}: {e}", path.display())))?;
    Ok(Some(v))
}

/// Per month: grid size, user range and the narrowest cell.
fn sweep_summary(sweep: &Value) -> Value {
    let months = sweep.as_array().cloned().unwrap_or_default();
    Value::Array(
        months
            .iter()
            .map(|m| {
                let cells = m["grid"]["cells"].as_array().cloned().unwrap_or_default();
                let users: Vec<u64> = cells.iter().filter_map(|c| c["users"].as_u64()).collect();
                let best = cells
                    .iter()
                    .filter(|c| c["precision_pp"].is_number())
                    .min_by(|a, b| a["precision_pp"].as_f64().partial_cmp(&b["precision_pp"].as_f64()).unwrap());
                serde_json::json!({
                    "month": m["month"],
                    "cells": cells.len(),
                    "min_users": users.iter().min(),
                    "max_users": users.iter().max(),
                    "narrowest": best.map(|c| serde_json::json!({
                        "x_low": c["x_low"], "x_upp": c["x_upp"],
                        "median": c["median"], "precision_pp": c["precision_pp"],
                    })),
                })
            })
            .collect(),
    )
}

fn geo_summary(geo: &Value) -> Value {
    let rep = &geo["representativeness"];
    serde_json::json!({
        "month": geo["month"],
        "per_state": rep["per_state"],
        "merged": rep["merged"],
        "max_residual_outside_gmc": rep["max_residual_outside_gmc"],
        "panel_total_variation": geo["panel"]["total_variation"],
        "panel": geo["panel"]["results"],
    })
}

fn pct(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.2}")).unwrap_or_else(|| "n/a".into())
}

fn markdown(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Vote-share estimates: {}\n", r.election);
    let _ = writeln!(
        s,
        "Official ruling-coalition share {:.2}%. Poll aggregate {:.1}% ± {:.1} pp.\n",
        r.official_ruling_pct,
        r.poll_ruling_pct,
        r.poll_band_pp / 2.0
    );
    let _ = writeln!(s, "| month | model | share % | median % | IQR pp | error pp | in poll band |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|");
    for x in &r.rows {
        let band = match x.within_poll_band {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} |",
            x.month,
            x.model,
            pct(x.share_pct),
            pct(x.median_pct),
            pct(x.precision_pp),
            x.error_pp.map(|v| format!("{v:+.2}")).unwrap_or_else(|| "n/a".into()),
            band
        );
    }
    if let Some(Value::Array(months)) = &r.sweep {
        let _ = writeln!(s, "\n## ALT threshold sweep\n");
        for m in months {
            let n = &m["narrowest"];
            let _ = writeln!(
                s,
                "- {}: {} cells, users {}..{}; narrowest IQR {} pp at x_low {}, x_upp {}",
                m["month"].as_str().unwrap_or("?"),
                m["cells"],
                m["min_users"],
                m["max_users"],
                pct(n["precision_pp"].as_f64()),
                n["x_low"],
                n["x_upp"]
            );
        }
    }
    if let Some(g) = &r.geo {
        let _ = writeln!(s, "\n## Geographic representativeness\n");
        let r_of = |v: &Value| pct(v["r"].as_f64());
        let _ = writeln!(s, "- r(population, twitter): {}", r_of(&g["per_state"]["population_twitter"]));
        let _ = writeln!(s, "- r(population, twitter), Greater Mexico City merged: {}", r_of(&g["merged"]["population_twitter"]));
        if g["per_state"]["population_internet"].is_object() {
            let _ = writeln!(s, "- r(population, internet): {}", r_of(&g["per_state"]["population_internet"]));
            let _ = writeln!(s, "- r(internet, twitter): {}", r_of(&g["per_state"]["internet_twitter"]));
        }
        let _ = writeln!(s, "- panel distance to population (TV): {}", g["panel_total_variation"]);
        if let Some(rows) = g["panel"].as_array() {
            for p in rows {
                let _ = writeln!(
                    s,
                    "- panel {}: median {} %, IQR {} pp",
                    p["model"].as_str().unwrap_or("?"),
                    pct(p["median"].as_f64().map(|v| 100.0 * v)),
                    pct(p["precision_pp"].as_f64())
                );
            }
        }
    }
    s
}

pub fn run(args: ReportArgs) -> Result<(), Failure> {
    let mut rec = Recorder::new("report", &args);
    let est_path = args.estimates.clone().unwrap_or_else(|| args.out_dir.join("estimates.json"));
    rec.input(&est_path)?;
    let file: EstimatesFile = serde_json::from_str(&read_to_string(&est_path)?)
        .map_err(|e| Failure::input(anyhow!("{}: {e}", est_path.display())))?;
    let sweep = read_optional(args.sweep.as_ref(), args.out_dir.join("sweep.json"), &mut rec)?;
    let geo = read_optional(args.geo.as_ref(), args.out_dir.join("geo_report.json"), &mut rec)?;

    let c = &file.reference;
    let report = Report {
        election: c.election.clone(),
        official_ruling_pct: c.official_ruling_pct,
        poll_ruling_pct: c.poll_ruling_pct,
        poll_band_pp: c.poll_band_pp,
        rows: file.rows.iter().map(|r| row(r, &file)).collect(),
        sweep: sweep.as_ref().map(sweep_summary),
        geo: geo.as_ref().map(geo_summary),
    };
    let json = args.out_dir.join("report.json");
    write_json(&json, &report)?;
    let md_path = args.out_dir.join("report.md");
    let md = markdown(&report);
    let mut out = create(&md_path)?;
    std::io::Write::write_all(&mut out, md.as_bytes()).map_err(Failure::internal)?;
    std::io::Write::flush(&mut out).map_err(Failure::internal)?;
    drop(out);
    rec.output(&json)?;
    rec.output(&md_path)?;
    say!("{}", md.trim_end());
    rec.finish(&args.out_dir)?;
    Ok(())
}
