pub mod geo;
pub mod ingest;
pub mod model;
pub mod report;
pub mod score;
pub mod synth;
pub mod sweep;
pub mod train;

use std::path::Path;

use votecast::models::read_records_csv;
use votecast::{Record, YearMonth};

use crate::output::open;
use crate::Failure;

/// Reads a scored-record table, failing on an empty one.
pub(crate) fn load_scored(path: &Path) -> Result<Vec<Record>, Failure> {
    let records = read_records_csv(open(path)?).map_err(Failure::from_lib)?;
    if records.is_empty() {
        return Err(Failure::input(anyhow::anyhow!("{}: 0 records", path.display())));
    }
    Ok(records)
}

pub(crate) fn parse_months(months: &[String]) -> Result<Vec<YearMonth>, Failure> {
    months
        .iter()
        .map(|m| m.parse::<YearMonth>().map_err(|e| Failure::config(anyhow::anyhow!("month `{m}`: {e}"))))
        .collect()
}

/// Records of one month, or all records when `month` is `None`.
pub(crate) fn select_month(records: &[Record], month: Option<YearMonth>) -> Result<Vec<Record>, Failure> {
    let Some(m) = month else { return Ok(records.to_vec()) };
    let w = m.window();
    let selected: Vec<Record> = records.iter().filter(|r| w.contains(&r.date)).cloned().collect();
    if selected.is_empty() {
        return Err(Failure::input(anyhow::anyhow!("no records in {m}")));
    }
    Ok(selected)
}
