use chrono::{DateTime, Utc};

use super::TweetRecord;
use crate::geo::{is_mexico, StateCode};

pub const SPANISH: &str = "es";

pub fn filter_language(t: &TweetRecord, lang: &str) -> bool {
    t.lang.eq_ignore_ascii_case(lang)
}

/// `start <= created_at < end`.
pub fn filter_window(t: &TweetRecord, start: &DateTime<Utc>, end: &DateTime<Utc>) -> bool {
    *start <= t.created_at && t.created_at < *end
}

/// Mexican state the tweet's geo attributes resolve to, trying `region`
/// before `place_name`. Tweets tagged with a foreign country resolve to
/// nothing.
pub fn resolve_state(t: &TweetRecord) -> Option<StateCode> {
    if !is_mexico(t.country.as_deref()) {
        return None;
    }
    t.region
        .as_deref()
        .and_then(StateCode::resolve)
        .or_else(|| t.place_name.as_deref().and_then(StateCode::resolve))
}

pub fn has_geodata(t: &TweetRecord) -> bool {
    resolve_state(t).is_some()
}
