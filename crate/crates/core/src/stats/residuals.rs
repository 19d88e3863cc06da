use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::StatsError;
use crate::geo::{Region, RegionDistribution};

/// Per-region `reference - observed`, in percentage points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub by_region: BTreeMap<Region, f64>,
}

impl Residuals {
    pub fn get(&self, r: Region) -> Option<f64> {
        self.by_region.get(&r).copied()
    }

    /// Largest absolute residual among regions passing `keep`.
    pub fn max_abs_where(&self, keep: impl Fn(Region) -> bool) -> Option<(Region, f64)> {
        self.by_region
            .iter()
            .filter(|(r, _)| keep(**r))
            .map(|(r, v)| (*r, *v))
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
    }
}

pub fn residuals(reference: &RegionDistribution, observed: &RegionDistribution) -> Result<Residuals, StatsError> {
    let a: Vec<Region> = reference.regions().collect();
    let b: Vec<Region> = observed.regions().collect();
    if a != b {
        let only_ref: Vec<String> = a.iter().filter(|r| !b.contains(r)).map(|r| r.to_string()).collect();
        let only_obs: Vec<String> = b.iter().filter(|r| !a.contains(r)).map(|r| r.to_string()).collect();
        return Err(StatsError::MismatchedRegions(format!(
            "only in reference: [{}]; only in observed: [{}]",
            only_ref.join(","),
            only_obs.join(",")
        )));
    }
    Ok(Residuals {
        by_region: reference.iter().map(|(r, p)| (r, p - observed.get(r).expect("same regions"))).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geo::{merge_greater_mexico_city, StateCode};

    #[test]
    fn residuals_sum_to_zero() {
        let a = RegionDistribution::from_state_counts(StateCode::ALL.into_iter().enumerate().map(|(i, s)| (s, i as f64 + 1.0))).unwrap();
        let b = RegionDistribution::from_state_counts(StateCode::ALL.into_iter().map(|s| (s, 1.0))).unwrap();
        let r = residuals(&a, &b).unwrap();
        assert!(r.by_region.values().sum::<f64>().abs() < 1e-9);
        let mx = Region::State(StateCode::MexicoCity);
        assert_eq!(r.get(mx).unwrap(), a.state(StateCode::MexicoCity) - 100.0 / 32.0);
    }

    #[test]
    fn mismatched_sets_rejected() {
        let a = RegionDistribution::from_state_counts(StateCode::ALL.into_iter().map(|s| (s, 1.0))).unwrap();
        let m = merge_greater_mexico_city(&a).unwrap();
        assert!(matches!(residuals(&a, &m), Err(StatsError::MismatchedRegions(_))));
    }
}
