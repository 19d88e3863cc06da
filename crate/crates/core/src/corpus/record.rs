use chrono::{DateTime, Utc};
use serde::Deserialize;
use serde_json::Value;

use super::CorpusError;

/// One archived tweet.
#[derive(Debug, Clone, PartialEq)]
pub struct TweetRecord {
    pub tweet_id: String,
    pub user_id: String,
    pub created_at: DateTime<Utc>,
    pub text: String,
    pub lang: String,
    pub country: Option<String>,
    pub region: Option<String>,
    pub place_name: Option<String>,
}

#[derive(Deserialize)]
struct RawTweet {
    id: Option<Value>,
    author_id: Option<Value>,
    created_at: Option<String>,
    text: Option<String>,
    lang: Option<String>,
    country: Option<String>,
    region: Option<String>,
    place_name: Option<String>,
}

/// Archives store ids either as strings or as JSON numbers.
fn id_string(v: Option<Value>) -> Option<String> {
    match v? {
        Value::String(s) if !s.trim().is_empty() => Some(s.trim().to_string()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn non_empty(v: Option<String>) -> Option<String> {
    v.map(|s| s.trim().to_string()).filter(|s| !s.is_empty())
}

/// Parses one JSON-lines record. `line` is 1-based and only used in errors.
pub fn parse_tweet_record(line: &str, line_no: usize) -> Result<TweetRecord, CorpusError> {
    let raw: RawTweet = serde_json::from_str(line)
        .map_err(|e| CorpusError::Malformed { line: line_no, message: e.to_string() })?;
    let reject = |reason: &str| CorpusError::Rejected { line: line_no, reason: reason.to_string() };

    let tweet_id = id_string(raw.id).ok_or_else(|| reject("missing id"))?;
    let user_id = id_string(raw.author_id).ok_or_else(|| reject("missing author_id"))?;
    let text = raw.text.ok_or_else(|| reject("missing text"))?;
    let created = raw.created_at.ok_or_else(|| reject("missing created_at"))?;
    let created_at = DateTime::parse_from_rfc3339(created.trim())
        .map_err(|e| reject(&format!("unparseable created_at `{created}`: {e}")))?
        .with_timezone(&Utc);
    let lang = raw.lang.ok_or_else(|| reject("missing lang"))?.trim().to_lowercase();

    Ok(TweetRecord {
        tweet_id,
        user_id,
        created_at,
        text,
        lang,
        country: non_empty(raw.country),
        region: non_empty(raw.region),
        place_name: non_empty(raw.place_name),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{filter_language, has_geodata};

    #[test]
    fn full_record_maps_every_field() {
        let line = r#"{"id":"1","author_id":"42","created_at":"2021-05-10T12:00:00-05:00","text":"Vota #PAN","lang":"es","country":"MX","region":"JC","place_name":"Guadalajara, Jalisco"}"#;
        let t = parse_tweet_record(line, 1).unwrap();
        assert_eq!(t.tweet_id, "1");
        assert_eq!(t.user_id, "42");
        assert_eq!(t.created_at.to_rfc3339(), "2021-05-10T17:00:00+00:00");
        assert_eq!(t.country.as_deref(), Some("MX"));
        assert_eq!(t.region.as_deref(), Some("JC"));
        assert_eq!(t.place_name.as_deref(), Some("Guadalajara, Jalisco"));
        assert!(has_geodata(&t));
    }

    #[test]
    fn missing_geo_fields_are_absent() {
        let line = r#"{"id":2,"author_id":7,"created_at":"2021-05-10T12:00:00Z","text":"hola","lang":"es"}"#;
        let t = parse_tweet_record(line, 1).unwrap();
        assert_eq!(t.tweet_id, "2");
        assert!(t.country.is_none() && t.region.is_none() && t.place_name.is_none());
        assert!(!has_geodata(&t));
    }

    #[test]
    fn english_records_parse_then_fail_the_language_filter() {
        let line = r#"{"id":"3","author_id":"7","created_at":"2021-05-10T12:00:00Z","text":"vote","lang":"en"}"#;
        let t = parse_tweet_record(line, 1).unwrap();
        assert!(!filter_language(&t, "es"));
    }

    #[test]
    fn malformed_json_carries_line_number() {
        match parse_tweet_record("{not json", 17) {
            Err(CorpusError::Malformed { line, .. }) => assert_eq!(line, 17),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_required_fields_are_rejected_with_reason() {
        let cases = [
            (r#"{"author_id":"1","created_at":"2021-05-10T12:00:00Z","text":"x","lang":"es"}"#, "missing id"),
            (r#"{"id":"1","created_at":"2021-05-10T12:00:00Z","text":"x","lang":"es"}"#, "missing author_id"),
            (r#"{"id":"1","author_id":"1","created_at":"2021-05-10T12:00:00Z","lang":"es"}"#, "missing text"),
            (r#"{"id":"1","author_id":"1","created_at":"yesterday","text":"x","lang":"es"}"#, "unparseable"),
        ];
        for (line, want) in cases {
            match parse_tweet_record(line, 3) {
                Err(CorpusError::Rejected { line, reason }) => {
                    assert_eq!(line, 3);
                    assert!(reason.contains(want), "{reason}");
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}
