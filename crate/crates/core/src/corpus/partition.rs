use std::collections::BTreeMap;

use chrono::{DateTime, Utc};

use crate::YearMonth;

/// Anything carrying a posting time.
pub trait Dated {
    fn date(&self) -> DateTime<Utc>;

    fn month(&self) -> YearMonth {
        YearMonth::of(&self.date())
    }
}

/// Buckets records by calendar month (boundaries at 05:00 UTC). Input order is
/// preserved within each bucket.
pub fn monthly_partition<R: Dated, I: IntoIterator<Item = R>>(records: I) -> BTreeMap<YearMonth, Vec<R>> {
    let mut buckets: BTreeMap<YearMonth, Vec<R>> = BTreeMap::new();
    for r in records {
        buckets.entry(r.month()).or_default().push(r);
    }
    buckets
}
