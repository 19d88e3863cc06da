use std::collections::{BTreeMap, HashMap};

use chrono::{DateTime, Utc};

use super::{GeoError, RegionDistribution, StateCode};
use crate::models::AllegianceRecord;

/// Each geolocated user's modal state. Ties go to the state of the user's
/// latest geolocated record (by date, then tweet id).
pub fn assign_user_states<T>(records: &[AllegianceRecord<T>]) -> BTreeMap<String, StateCode> {
    struct Tally<'a> {
        counts: HashMap<StateCode, usize>,
        latest: Option<(DateTime<Utc>, &'a str, StateCode)>,
    }
    let mut per_user: HashMap<&str, Tally> = HashMap::new();
    for r in records {
        let Some(state) = r.region else { continue };
        let t = per_user
            .entry(r.user_id.as_str())
            .or_insert_with(|| Tally { counts: HashMap::new(), latest: None });
        *t.counts.entry(state).or_default() += 1;
        let key = (r.date, r.tweet_id.as_str(), state);
        if t.latest.is_none_or(|l| (l.0, l.1) < (key.0, key.1)) {
            t.latest = Some(key);
        }
    }
    per_user
        .into_iter()
        .map(|(user, t)| {
            let max = *t.counts.values().max().expect("at least one record");
            let latest = t.latest.expect("at least one record").2;
            let state = if t.counts[&latest] == max {
                latest
            } else {
                *t.counts.iter().filter(|(_, c)| **c == max).map(|(s, _)| s).min().expect("non-empty")
            };
            (user.to_string(), state)
        })
        .collect()
}

/// Distribution of geolocated users over the 32 states.
pub fn aggregate_users_by_state<T>(records: &[AllegianceRecord<T>]) -> Result<RegionDistribution, GeoError> {
    let users = assign_user_states(records);
    if users.is_empty() {
        return Err(GeoError::NoGeoUsers);
    }
    let mut counts: BTreeMap<StateCode, f64> = BTreeMap::new();
    for s in users.values() {
        *counts.entry(*s).or_default() += 1.0;
    }
    RegionDistribution::from_state_counts(counts)
}
