use std::collections::BTreeSet;
use std::io::Read;

use serde::{Deserialize, Serialize};

use super::{GeoError, RegionDistribution, StateCode};

const POPULATION_2020: &str = include_str!("../../data/population_2020.csv");

/// One state's census row. `internet_users` is optional so that the bundled
/// population-only table parses too.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub state_code: StateCode,
    pub population: u64,
    #[serde(default)]
    pub internet_users: Option<u64>,
}

/// Reads `state_code,population[,internet_users]` rows. Every state must
/// appear exactly once and internet users may not exceed population.
pub fn read_census_csv<R: Read>(input: R) -> Result<Vec<CensusRow>, GeoError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let mut rows = Vec::with_capacity(32);
    let mut seen = BTreeSet::new();
    for row in rdr.deserialize() {
        let row: CensusRow = row?;
        if !seen.insert(row.state_code) {
            return Err(GeoError::Census(format!("duplicate state {}", row.state_code.code())));
        }
        if row.internet_users.is_some_and(|i| i > row.population) {
            return Err(GeoError::Census(format!("{}: internet users exceed population", row.state_code.code())));
        }
        rows.push(row);
    }
    let missing: Vec<&str> = StateCode::ALL.iter().filter(|s| !seen.contains(s)).map(|s| s.code()).collect();
    if !missing.is_empty() {
        return Err(GeoError::MissingStates(missing.join(",")));
    }
    rows.sort_by_key(|r| r.state_code);
    Ok(rows)
}

/// The bundled 2020 census population table.
pub fn population_2020() -> Vec<CensusRow> {
    read_census_csv(POPULATION_2020.as_bytes()).expect("bundled census parses")
}

pub fn population_distribution(rows: &[CensusRow]) -> Result<RegionDistribution, GeoError> {
    RegionDistribution::from_state_counts(rows.iter().map(|r| (r.state_code, r.population as f64)))
}

pub fn internet_distribution(rows: &[CensusRow]) -> Result<RegionDistribution, GeoError> {
    let counts = rows
        .iter()
        .map(|r| {
            r.internet_users
                .map(|i| (r.state_code, i as f64))
                .ok_or_else(|| GeoError::Census(format!("{}: no internet-user count", r.state_code.code())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    RegionDistribution::from_state_counts(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_population() {
        let rows = population_2020();
        assert_eq!(rows.iter().map(|r| r.population).sum::<u64>(), 126_014_024);
        let d = population_distribution(&rows).unwrap();
        assert!((d.state(StateCode::MexicoCity) - 7.31).abs() < 0.01);
        assert!(internet_distribution(&rows).is_err());
    }

    #[test]
    fn validation() {
        let mut text = String::from("state_code,population,internet_users\n");
        for s in StateCode::ALL {
            text += &format!("{},100,50\n", s.code());
        }
        assert_eq!(read_census_csv(text.as_bytes()).unwrap().len(), 32);
        let bad = text.replacen("100,50", "100,150", 1);
        assert!(matches!(read_census_csv(bad.as_bytes()), Err(GeoError::Census(_))));
        let short: String = text.lines().take(31).map(|l| format!("{l}\n")).collect();
        assert!(matches!(read_census_csv(short.as_bytes()), Err(GeoError::MissingStates(_))));
    }
}
