use std::collections::HashMap;

use super::AllegianceRecord;
use crate::geo::StateCode;
use crate::{Coalition, Scalar};

/// A record reduced to what the estimators read.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation<T> {
    /// Dense index into [`ModelInput::user_ids`].
    pub user: u32,
    pub coalition: Coalition,
    pub allegiance: T,
    pub region: Option<StateCode>,
}

impl<T> Observation<T> {
    #[inline]
    pub fn has_geodata(&self) -> bool {
        self.region.is_some()
    }
}

/// Records with interned user ids; the unit the estimators and resamplers
/// work on. Resamples are expressed as per-observation multiplicities, so
/// nothing is copied.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelInput<T> {
    pub observations: Vec<Observation<T>>,
    pub user_ids: Vec<String>,
}

impl<T: Scalar> ModelInput<T> {
    pub fn from_records(records: &[AllegianceRecord<T>]) -> Self {
        let mut index: HashMap<&str, u32> = HashMap::new();
        let mut user_ids = Vec::new();
        let observations = records
            .iter()
            .map(|r| {
                let user = *index.entry(r.user_id.as_str()).or_insert_with(|| {
                    user_ids.push(r.user_id.clone());
                    (user_ids.len() - 1) as u32
                });
                Observation { user, coalition: r.coalition, allegiance: r.allegiance.clone(), region: r.region }
            })
            .collect();
        Self { observations, user_ids }
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn n_users(&self) -> usize {
        self.user_ids.len()
    }

    /// Observation indices grouped by user.
    pub fn observations_by_user(&self) -> Vec<Vec<u32>> {
        let mut by_user = vec![Vec::new(); self.n_users()];
        for (i, o) in self.observations.iter().enumerate() {
            by_user[o.user as usize].push(i as u32);
        }
        by_user
    }
}
