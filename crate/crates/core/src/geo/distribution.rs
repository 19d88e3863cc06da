use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GeoError, StateCode};

/// A state, or the merged Greater Mexico City region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Region {
    State(StateCode),
    GreaterMexicoCity,
}

impl Region {
    pub const GMC_CODE: &'static str = "GMC";
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::State(s) => f.write_str(s.code()),
            Region::GreaterMexicoCity => f.write_str(Self::GMC_CODE),
        }
    }
}

impl From<Region> for String {
    fn from(r: Region) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Region {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        if s == Region::GMC_CODE {
            Ok(Region::GreaterMexicoCity)
        } else {
            s.parse().map(Region::State)
        }
    }
}

const SUM_TOLERANCE: f64 = 1e-9;

/// Percentages per region, summing to 100.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegionDistribution {
    pct: BTreeMap<Region, f64>,
}

impl RegionDistribution {
    /// Normalizes non-negative counts to percentages.
    pub fn from_counts<I: IntoIterator<Item = (Region, f64)>>(counts: I) -> Result<Self, GeoError> {
        let counts: BTreeMap<Region, f64> = counts.into_iter().collect();
        if counts.values().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(GeoError::InvalidDistribution("counts must be finite and non-negative".into()));
        }
        let total: f64 = counts.values().sum();
        if total <= 0.0 {
            return Err(GeoError::InvalidDistribution("total count is zero".into()));
        }
        Ok(Self { pct: counts.into_iter().map(|(r, c)| (r, 100.0 * c / total)).collect() })
    }

    /// Per-state distribution over all 32 states; missing states get 0%.
    pub fn from_state_counts<I: IntoIterator<Item = (StateCode, f64)>>(counts: I) -> Result<Self, GeoError> {
        let mut all: BTreeMap<Region, f64> = StateCode::ALL.into_iter().map(|s| (Region::State(s), 0.0)).collect();
        for (s, c) in counts {
            *all.get_mut(&Region::State(s)).expect("all states present") += c;
        }
        Self::from_counts(all)
    }

    /// Accepts percentages directly, checking they sum to 100.
    pub fn from_percentages(pct: BTreeMap<Region, f64>) -> Result<Self, GeoError> {
        let sum: f64 = pct.values().sum();
        if pct.values().any(|p| *p < 0.0) || (sum - 100.0).abs() > SUM_TOLERANCE {
            return Err(GeoError::InvalidDistribution(format!("percentages sum to {sum}")));
        }
        Ok(Self { pct })
    }

    pub fn get(&self, r: Region) -> Option<f64> {
        self.pct.get(&r).copied()
    }

    pub fn state(&self, s: StateCode) -> f64 {
        self.get(Region::State(s)).unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Region, f64)> + '_ {
        self.pct.iter().map(|(r, p)| (*r, *p))
    }

    pub fn regions(&self) -> impl Iterator<Item = Region> + '_ {
        self.pct.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.pct.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pct.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.pct.values().sum()
    }

    /// Percentages in region order.
    pub fn values(&self) -> Vec<f64> {
        self.pct.values().copied().collect()
    }
}

/// Collapses Mexico City, Hidalgo and the State of Mexico into one region.
pub fn merge_greater_mexico_city(d: &RegionDistribution) -> Result<RegionDistribution, GeoError> {
    if d.get(Region::GreaterMexicoCity).is_some() {
        return Err(GeoError::AlreadyMerged);
    }
    let missing: Vec<&str> =
        StateCode::ALL.iter().filter(|s| d.get(Region::State(**s)).is_none()).map(|s| s.code()).collect();
    if !missing.is_empty() {
        return Err(GeoError::MissingStates(missing.join(",")));
    }
    let mut merged = 0.0;
    let mut pct = BTreeMap::new();
    for (r, p) in d.iter() {
        match r {
            Region::State(s) if s.is_greater_mexico_city() => merged += p,
            other => {
                pct.insert(other, p);
            }
        }
    }
    pct.insert(Region::GreaterMexicoCity, merged);
    Ok(RegionDistribution { pct })
}

/// Total-variation distance between two distributions, as a fraction.
pub fn total_variation(a: &RegionDistribution, b: &RegionDistribution) -> f64 {
    let regions: std::collections::BTreeSet<Region> = a.regions().chain(b.regions()).collect();
    0.5 * regions.into_iter().map(|r| (a.get(r).unwrap_or(0.0) - b.get(r).unwrap_or(0.0)).abs()).sum::<f64>() / 100.0
}
