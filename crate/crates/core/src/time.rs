//! Calendar conventions.
//!
//! Day and month boundaries sit at 05:00:00 UTC, midnight in Mexico City
//! during the election period. A timestamp belongs to the calendar month of
//! `created_at - 5h`.

use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Datelike, Duration, TimeZone, Utc};
use serde::{Deserialize, Serialize};

/// Offset of the day boundary from UTC midnight.
pub const BOUNDARY_HOURS: i64 = 5;

/// Calendar month in local (boundary-shifted) time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct YearMonth {
    pub year: i32,
    pub month: u32,
}

impl YearMonth {
    pub fn new(year: i32, month: u32) -> Option<Self> {
        (1..=12).contains(&month).then_some(Self { year, month })
    }

    pub fn of(t: &DateTime<Utc>) -> Self {
        let local = *t - Duration::hours(BOUNDARY_HOURS);
        Self { year: local.year(), month: local.month() }
    }

    pub fn next(self) -> Self {
        if self.month == 12 {
            Self { year: self.year + 1, month: 1 }
        } else {
            Self { year: self.year, month: self.month + 1 }
        }
    }

    /// First instant of the month (05:00 UTC on the 1st).
    pub fn start(self) -> DateTime<Utc> {
        Utc.with_ymd_and_hms(self.year, self.month, 1, BOUNDARY_HOURS as u32, 0, 0)
            .single()
            .expect("valid month start")
    }

    /// Half-open window covering this month.
    pub fn window(self) -> TimeWindow {
        TimeWindow { start: self.start(), end: self.next().start() }
    }
}

impl fmt::Display for YearMonth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl FromStr for YearMonth {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (y, m) = s.trim().split_once('-').ok_or_else(|| format!("expected YYYY-MM, got `{s}`"))?;
        let year = y.parse().map_err(|_| format!("bad year in `{s}`"))?;
        let month = m.parse().map_err(|_| format!("bad month in `{s}`"))?;
        YearMonth::new(year, month).ok_or_else(|| format!("month out of range in `{s}`"))
    }
}

impl From<YearMonth> for String {
    fn from(m: YearMonth) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for YearMonth {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Half-open time interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeWindow {
    pub start: DateTime<Utc>,
    pub end: DateTime<Utc>,
}

impl TimeWindow {
    pub fn new(start: DateTime<Utc>, end: DateTime<Utc>) -> Option<Self> {
        (start < end).then_some(Self { start, end })
    }

    /// Dec 1st 2020 to May 31st 2021, both at 05:00:00 UTC.
    pub fn election_2021() -> Self {
        Self {
            start: Utc.with_ymd_and_hms(2020, 12, 1, 5, 0, 0).unwrap(),
            end: Utc.with_ymd_and_hms(2021, 5, 31, 5, 0, 0).unwrap(),
        }
    }

    #[inline]
    pub fn contains(&self, t: &DateTime<Utc>) -> bool {
        self.start <= *t && *t < self.end
    }
}

impl Default for TimeWindow {
    fn default() -> Self {
        Self::election_2021()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(s: &str) -> DateTime<Utc> {
        DateTime::parse_from_rfc3339(s).unwrap().with_timezone(&Utc)
    }

    #[test]
    fn month_boundary_is_five_utc() {
        assert_eq!(YearMonth::of(&ts("2021-05-01T04:59:59Z")).to_string(), "2021-04");
        assert_eq!(YearMonth::of(&ts("2021-05-01T05:00:00Z")).to_string(), "2021-05");
        assert_eq!(YearMonth::of(&ts("2021-01-01T02:00:00Z")).to_string(), "2020-12");
    }

    #[test]
    fn month_window_is_half_open() {
        let m: YearMonth = "2020-12".parse().unwrap();
        let w = m.window();
        assert!(w.contains(&ts("2020-12-01T05:00:00Z")));
        assert!(!w.contains(&ts("2021-01-01T05:00:00Z")));
        assert_eq!(m.next().to_string(), "2021-01");
    }

    #[test]
    fn election_window_bounds() {
        let w = TimeWindow::election_2021();
        assert!(w.contains(&ts("2021-05-31T04:59:59Z")));
        assert!(!w.contains(&ts("2021-05-31T05:00:00Z")));
        assert!(!w.contains(&ts("2020-11-30T23:00:00Z")));
        assert!("2021-13".parse::<YearMonth>().is_err());
    }
}
