use std::collections::{BTreeMap, HashSet};
use std::io::{BufRead, Read, Write};

use chrono::{DateTime, Utc};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{filter_language, filter_window, parse_tweet_record, resolve_state, CorpusError, Dated, QuerySet, SPANISH};
use crate::allegiance::tokenize;
use crate::geo::StateCode;
use crate::{Coalition, Party, TimeWindow, YearMonth};

/// A tweet assigned to one party stream, before allegiance scoring.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchedTweet {
    pub tweet_id: String,
    pub user_id: String,
    pub created_at: DateTime<Utc>,
    pub text: String,
    pub region: Option<StateCode>,
    pub country: Option<String>,
    pub party: Party,
}

impl MatchedTweet {
    pub fn coalition(&self) -> Coalition {
        self.party.coalition()
    }

    pub fn has_geodata(&self) -> bool {
        self.region.is_some()
    }
}

impl Dated for MatchedTweet {
    fn date(&self) -> DateTime<Utc> {
        self.created_at
    }
}

#[derive(Debug, Clone)]
pub struct IngestConfig {
    pub queries: QuerySet,
    pub window: TimeWindow,
    pub language: String,
}

impl IngestConfig {
    pub fn new(queries: QuerySet) -> Self {
        Self { queries, window: TimeWindow::election_2021(), language: SPANISH.to_string() }
    }
}

/// Record counts after each pipeline stage.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub lines: u64,
    pub malformed: u64,
    pub rejected: u64,
    pub parsed: u64,
    pub wrong_language: u64,
    pub out_of_window: u64,
    pub unmatched: u64,
    pub matched_tweets: u64,
    pub party_records: u64,
    pub duplicates: u64,
    pub emitted: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonthStats {
    pub tweets: u64,
    pub users: u64,
    pub geo_tweets: u64,
    pub geo_users: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub total_tweets: u64,
    pub unique_users: u64,
    pub geo_tweets: u64,
    pub geo_users: u64,
    pub geo_tweet_ratio: f64,
    pub per_month: BTreeMap<YearMonth, MonthStats>,
}

impl CorpusStats {
    /// Counts distinct tweets and users (a tweet in several party streams
    /// counts once).
    pub fn from_records(records: &[MatchedTweet]) -> Self {
        #[derive(Default)]
        struct Acc<'a> {
            tweets: HashSet<&'a str>,
            users: HashSet<&'a str>,
            geo_tweets: HashSet<&'a str>,
            geo_users: HashSet<&'a str>,
        }
        impl<'a> Acc<'a> {
            fn add(&mut self, r: &'a MatchedTweet) {
                self.tweets.insert(&r.tweet_id);
                self.users.insert(&r.user_id);
                if r.has_geodata() {
                    self.geo_tweets.insert(&r.tweet_id);
                    self.geo_users.insert(&r.user_id);
                }
            }
            fn month(&self) -> MonthStats {
                MonthStats {
                    tweets: self.tweets.len() as u64,
                    users: self.users.len() as u64,
                    geo_tweets: self.geo_tweets.len() as u64,
                    geo_users: self.geo_users.len() as u64,
                }
            }
        }
        let mut all = Acc::default();
        let mut months: BTreeMap<YearMonth, Acc> = BTreeMap::new();
        for r in records {
            all.add(r);
            months.entry(r.month()).or_default().add(r);
        }
        let total = all.month();
        Self {
            total_tweets: total.tweets,
            unique_users: total.users,
            geo_tweets: total.geo_tweets,
            geo_users: total.geo_users,
            geo_tweet_ratio: if total.tweets == 0 { 0.0 } else { total.geo_tweets as f64 / total.tweets as f64 },
            per_month: months.into_iter().map(|(m, a)| (m, a.month())).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IngestReport {
    pub counts: StageCounts,
    pub stats: CorpusStats,
}

enum Outcome {
    Blank,
    Malformed(CorpusError),
    Rejected(CorpusError),
    WrongLanguage,
    OutOfWindow,
    Unmatched,
    Matched(Box<super::TweetRecord>, Vec<Party>),
}

const CHUNK_LINES: usize = 16 * 1024;

/// Streaming ingestion over one or more JSON-lines shards.
///
/// Shards are parsed in parallel chunks; merging (dedup on `(tweet_id,
/// party)` and counting) is sequential in input order, and [`finish`]
/// sorts by `(created_at, tweet_id, party)`, so the output does not depend on
/// how the input was sharded.
///
/// [`finish`]: Ingestor::finish
pub struct Ingestor {
    config: IngestConfig,
    seen: HashSet<(String, Party)>,
    counts: StageCounts,
    records: Vec<MatchedTweet>,
}

impl Ingestor {
    pub fn new(config: IngestConfig) -> Self {
        Self { config, seen: HashSet::new(), counts: StageCounts::default(), records: Vec::new() }
    }

    pub fn counts(&self) -> &StageCounts {
        &self.counts
    }

    fn classify(&self, line_no: usize, line: &str) -> Outcome {
        if line.trim().is_empty() {
            return Outcome::Blank;
        }
        let t = match parse_tweet_record(line, line_no) {
            Ok(t) => t,
            Err(e @ CorpusError::Malformed { .. }) => return Outcome::Malformed(e),
            Err(e) => return Outcome::Rejected(e),
        };
        if !filter_language(&t, &self.config.language) {
            return Outcome::WrongLanguage;
        }
        if !filter_window(&t, &self.config.window.start, &self.config.window.end) {
            return Outcome::OutOfWindow;
        }
        let parties = self.config.queries.matching_parties(&tokenize(&t.text));
        if parties.is_empty() {
            Outcome::Unmatched
        } else {
            Outcome::Matched(Box::new(t), parties)
        }
    }

    fn merge(&mut self, source: &str, outcome: Outcome) {
        match outcome {
            Outcome::Blank => return,
            Outcome::Malformed(e) => {
                log::warn!("{source}: {e}");
                self.counts.malformed += 1;
            }
            Outcome::Rejected(e) => {
                log::warn!("{source}: {e}");
                self.counts.rejected += 1;
            }
            Outcome::WrongLanguage => self.counts.wrong_language += 1,
            Outcome::OutOfWindow => self.counts.out_of_window += 1,
            Outcome::Unmatched => self.counts.unmatched += 1,
            Outcome::Matched(t, parties) => {
                self.counts.matched_tweets += 1;
                let region = resolve_state(&t);
                for party in parties {
                    self.counts.party_records += 1;
                    if !self.seen.insert((t.tweet_id.clone(), party)) {
                        self.counts.duplicates += 1;
                        continue;
                    }
                    self.counts.emitted += 1;
                    self.records.push(MatchedTweet {
                        tweet_id: t.tweet_id.clone(),
                        user_id: t.user_id.clone(),
                        created_at: t.created_at,
                        text: t.text.clone(),
                        region,
                        country: t.country.clone(),
                        party,
                    });
                }
            }
        }
        self.counts.lines += 1;
    }

    /// Consumes one shard. Malformed and rejected lines are logged and
    /// counted; only I/O failures abort.
    pub fn ingest_reader<R: BufRead>(&mut self, source: &str, reader: R) -> Result<(), CorpusError> {
        let mut lines = reader.lines().enumerate();
        loop {
            let mut chunk = Vec::with_capacity(CHUNK_LINES);
            for (i, line) in lines.by_ref().take(CHUNK_LINES) {
                let line = line.map_err(|e| CorpusError::Io { source_name: source.to_string(), source: e })?;
                chunk.push((i + 1, line));
            }
            if chunk.is_empty() {
                break;
            }
            let outcomes: Vec<Outcome> = chunk.par_iter().map(|(n, l)| self.classify(*n, l)).collect();
            for o in outcomes {
                self.merge(source, o);
            }
        }
        self.counts.parsed = self.counts.lines - self.counts.malformed - self.counts.rejected;
        Ok(())
    }

    /// Sorted, deduplicated party records plus the run report.
    pub fn finish(mut self) -> (Vec<MatchedTweet>, IngestReport) {
        self.records.sort_by(|a, b| {
            (a.created_at, &a.tweet_id, a.party).cmp(&(b.created_at, &b.tweet_id, b.party))
        });
        let stats = CorpusStats::from_records(&self.records);
        (self.records, IngestReport { counts: self.counts, stats })
    }
}

#[derive(Serialize, Deserialize)]
struct MatchedRow {
    tweet_id: String,
    user_id: String,
    region: Option<StateCode>,
    country: Option<String>,
    party: Party,
    allegiance: Option<f64>,
    date: String,
    coalition: Coalition,
    text: String,
}

use super::ingest_date::{format as format_date, parse as parse_date};

/// Writes matched tweets in the scored-record column layout with an empty
/// `allegiance` column and a trailing `text` column for the scorer.
pub fn write_matched_csv<W: Write>(out: W, records: &[MatchedTweet]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(MatchedRow {
            tweet_id: r.tweet_id.clone(),
            user_id: r.user_id.clone(),
            region: r.region,
            country: r.country.clone(),
            party: r.party,
            allegiance: None,
            date: format_date(&r.created_at),
            coalition: r.coalition(),
            text: r.text.clone(),
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_matched_csv<R: Read>(input: R) -> Result<Vec<MatchedTweet>, CorpusError> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<MatchedRow>().enumerate() {
        let row = row.map_err(|e| CorpusError::Table(format!("row {}: {e}", i + 1)))?;
        if row.coalition != row.party.coalition() {
            return Err(CorpusError::Table(format!("row {}: coalition inconsistent with party {}", i + 1, row.party)));
        }
        out.push(MatchedTweet {
            tweet_id: row.tweet_id,
            user_id: row.user_id,
            created_at: parse_date(&row.date).map_err(|e| CorpusError::Table(format!("row {}: {e}", i + 1)))?,
            text: row.text,
            region: row.region,
            country: row.country,
            party: row.party,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(id: &str, user: &str, at: &str, text: &str, lang: &str) -> String {
        serde_json::json!({"id": id, "author_id": user, "created_at": at, "text": text, "lang": lang}).to_string()
    }

    fn run(input: &str) -> (Vec<MatchedTweet>, IngestReport) {
        let mut ing = Ingestor::new(IngestConfig::new(QuerySet::bundled()));
        ing.ingest_reader("test", input.as_bytes()).unwrap();
        ing.finish()
    }

    #[test]
    fn filters_dedups_and_duplicates_multi_party_tweets() {
        let input = [
            line("1", "a", "2021-05-02T10:00:00Z", "Vota #PAN", "es"),
            line("1", "a", "2021-05-02T10:00:00Z", "Vota #PAN", "es"),
            line("2", "b", "2021-05-02T09:00:00Z", "MORENA y PRI", "es"),
            line("3", "c", "2021-05-02T09:00:00Z", "vote PAN", "en"),
            line("4", "c", "2019-05-02T09:00:00Z", "vota PAN", "es"),
            line("5", "c", "2021-05-02T09:00:00Z", "hola", "es"),
            "{broken".to_string(),
            String::new(),
        ]
        .join("\n");
        let (recs, rep) = run(&input);
        let got: Vec<_> = recs.iter().map(|r| (r.tweet_id.as_str(), r.party)).collect();
        assert_eq!(got, vec![("2", Party::Morena), ("2", Party::Pri), ("1", Party::Pan)]);
        let c = &rep.counts;
        assert_eq!((c.lines, c.malformed, c.wrong_language, c.out_of_window, c.unmatched), (7, 1, 1, 1, 1));
        assert_eq!((c.duplicates, c.emitted), (1, 3));
        assert_eq!(rep.stats.total_tweets, 2);
        assert_eq!(rep.stats.unique_users, 2);
    }

    #[test]
    fn retweets_are_kept() {
        let (recs, _) = run(&line("9", "a", "2021-05-02T10:00:00Z", "RT @x: arriba el #PRI", "es"));
        assert_eq!(recs.len(), 1);
    }

    #[test]
    fn sharding_does_not_change_output() {
        let lines: Vec<String> = (0..50)
            .map(|i| line(&format!("{i}"), &format!("u{}", i % 7), &format!("2021-0{}-1{}T10:00:00Z", 1 + i % 5, i % 10), "el PRI y el PAN", "es"))
            .collect();
        let (whole, _) = run(&lines.join("\n"));
        let mut ing = Ingestor::new(IngestConfig::new(QuerySet::bundled()));
        ing.ingest_reader("a", lines[..20].join("\n").as_bytes()).unwrap();
        ing.ingest_reader("b", lines[20..].join("\n").as_bytes()).unwrap();
        let (sharded, _) = ing.finish();
        assert_eq!(whole, sharded);
    }

    #[test]
    fn csv_round_trip() {
        let (recs, _) = run(&line("1", "a", "2021-05-02T10:00:00.123Z", "Vota #PAN, \"ya\"", "es"));
        let mut buf = Vec::new();
        write_matched_csv(&mut buf, &recs).unwrap();
        let header = String::from_utf8(buf.clone()).unwrap();
        assert!(header.starts_with("tweet_id,user_id,region,country,party,allegiance,date,coalition,text\n"));
        assert_eq!(read_matched_csv(buf.as_slice()).unwrap(), recs);
    }
}
