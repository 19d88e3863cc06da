//! Ingestion of archived tweets: parsing, party matching, filtering and
//! deduplication.

mod filter;
mod ingest;
mod partition;
mod query;
mod record;

pub use filter::{filter_language, filter_window, has_geodata, resolve_state, SPANISH};
pub use ingest::{
    read_matched_csv, write_matched_csv, CorpusStats, IngestConfig, IngestReport, Ingestor, MatchedTweet,
    MonthStats, StageCounts,
};
pub use partition::{monthly_partition, Dated};
pub use query::{match_party_query, CompiledQuery, QuerySet, QuerySpec};
pub use record::{parse_tweet_record, TweetRecord};

use thiserror::Error;

/// RFC 3339 date columns shared by the record tables.
pub(crate) mod ingest_date {
    use chrono::{DateTime, SecondsFormat, Utc};

    pub fn format(t: &DateTime<Utc>) -> String {
        t.to_rfc3339_opts(SecondsFormat::AutoSi, true)
    }

    pub fn parse(s: &str) -> Result<DateTime<Utc>, String> {
        DateTime::parse_from_rfc3339(s.trim())
            .map(|t| t.with_timezone(&Utc))
            .map_err(|e| format!("bad date `{s}`: {e}"))
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: malformed JSON: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: record rejected: {reason}")]
    Rejected { line: usize, reason: String },
    #[error("query for {party}: {reason}")]
    InvalidQuery { party: String, reason: String },
    #[error("invalid query file: {0}")]
    QueryFile(String),
    #[error("{source_name}: {source}")]
    Io {
        source_name: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid record table: {0}")]
    Table(String),
}
