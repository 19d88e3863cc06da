use std::collections::BTreeMap;

use serde::Serialize;

use super::AllegianceRecord;
use crate::scalar::count;
use crate::{Coalition, Scalar};

/// Mean allegiance of one user toward each coalition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UserAllegiance<T> {
    pub user_id: String,
    /// Mean over the user's ruling-labeled records; `None` without any.
    pub mean_ruling: Option<T>,
    pub mean_opposition: Option<T>,
    pub n_ruling: u64,
    pub n_opposition: u64,
}

impl<T: Scalar> UserAllegiance<T> {
    pub fn mean(&self, y: Coalition) -> Option<&T> {
        match y {
            Coalition::Ruling => self.mean_ruling.as_ref(),
            Coalition::Opposition => self.mean_opposition.as_ref(),
        }
    }
}

/// Per-user, per-coalition mean allegiance, sorted by user id.
pub fn user_mean_allegiance<T: Scalar>(records: &[AllegianceRecord<T>]) -> Vec<UserAllegiance<T>> {
    let mut acc: BTreeMap<&str, ([u64; 2], [T; 2])> = BTreeMap::new();
    for r in records {
        let e = acc.entry(&r.user_id).or_insert_with(|| ([0, 0], [T::zero(), T::zero()]));
        let y = r.coalition.index();
        e.0[y] += 1;
        e.1[y] = e.1[y].clone() + r.allegiance.clone();
    }
    acc.into_iter()
        .map(|(user, (n, [s0, s1]))| {
            let mean = |s: T, n: u64| (n > 0).then(|| s / count(n));
            UserAllegiance {
                user_id: user.to_string(),
                mean_ruling: mean(s0, n[0]),
                mean_opposition: mean(s1, n[1]),
                n_ruling: n[0],
                n_opposition: n[1],
            }
        })
        .collect()
}
