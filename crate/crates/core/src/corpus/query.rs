use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CorpusError, TweetRecord};
use crate::allegiance::tokenize;
use crate::Party;

/// Search terms for one party.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuerySpec {
    pub party: Party,
    pub keywords: Vec<String>,
    #[serde(default)]
    pub hashtags: Vec<String>,
    #[serde(default)]
    pub handles: Vec<String>,
    #[serde(default)]
    pub exclusions: Vec<String>,
}

impl QuerySpec {
    pub fn compile(&self) -> Result<CompiledQuery, CorpusError> {
        let invalid = |reason: String| CorpusError::InvalidQuery { party: self.party.to_string(), reason };
        let code = self.party.code().to_lowercase();
        if !self.keywords.iter().any(|k| k.trim().to_lowercase() == code) {
            return Err(invalid(format!("keywords must include the party name `{}`", self.party)));
        }
        let phrases = |terms: &[String], what: &str| -> Result<Vec<Vec<String>>, CorpusError> {
            terms
                .iter()
                .map(|t| {
                    let toks = tokenize(t);
                    if toks.is_empty() {
                        Err(invalid(format!("{what} `{t}` has no searchable tokens")))
                    } else {
                        Ok(toks)
                    }
                })
                .collect()
        };
        let mut terms = phrases(&self.keywords, "keyword")?;
        terms.extend(phrases(&self.hashtags, "hashtag")?);
        terms.extend(phrases(&self.handles, "handle")?);
        Ok(CompiledQuery { party: self.party, terms, exclusions: phrases(&self.exclusions, "exclusion")? })
    }
}

/// A query reduced to token phrases.
#[derive(Debug, Clone)]
pub struct CompiledQuery {
    pub party: Party,
    terms: Vec<Vec<String>>,
    exclusions: Vec<Vec<String>>,
}

impl CompiledQuery {
    /// Matches pre-tokenized text.
    pub fn matches_tokens(&self, tokens: &[String]) -> bool {
        self.terms.iter().any(|p| contains_phrase(tokens, p))
            && !self.exclusions.iter().any(|p| contains_phrase(tokens, p))
    }
}

/// Bare words also match their hashtag form (`morena` hits `#morena`).
fn token_matches(term: &str, tok: &str) -> bool {
    if term == tok {
        return true;
    }
    !term.starts_with(['#', '@']) && tok.strip_prefix('#') == Some(term)
}

fn contains_phrase(tokens: &[String], phrase: &[String]) -> bool {
    if phrase.len() > tokens.len() {
        return false;
    }
    tokens
        .windows(phrase.len())
        .any(|w| w.iter().zip(phrase).all(|(tok, term)| token_matches(term, tok)))
}

/// True iff the tweet hits any keyword, hashtag or handle of `q` and none of
/// its exclusions. Matching is case-insensitive, on whole tokens, with URLs
/// removed.
pub fn match_party_query(t: &TweetRecord, q: &QuerySpec) -> bool {
    match q.compile() {
        Ok(c) => c.matches_tokens(&tokenize(&t.text)),
        Err(_) => false,
    }
}

/// Compiled queries for all parties of interest.
#[derive(Debug, Clone)]
pub struct QuerySet {
    queries: Vec<CompiledQuery>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum QueryDocument {
    One(QuerySpec),
    Many(Vec<QuerySpec>),
}

impl QuerySet {
    pub const DEFAULT_JSON: &'static str = include_str!("../../data/queries.json");

    pub fn new(specs: &[QuerySpec]) -> Result<Self, CorpusError> {
        let mut queries: Vec<CompiledQuery> = specs.iter().map(QuerySpec::compile).collect::<Result<_, _>>()?;
        queries.sort_by_key(|q| q.party);
        if let Some(w) = queries.windows(2).find(|w| w[0].party == w[1].party) {
            return Err(CorpusError::QueryFile(format!("duplicate query for {}", w[0].party)));
        }
        Ok(Self { queries })
    }

    /// Parses a JSON document holding one query object or an array of them.
    pub fn parse_specs(json: &str) -> Result<Vec<QuerySpec>, CorpusError> {
        match serde_json::from_str(json).map_err(|e| CorpusError::QueryFile(e.to_string()))? {
            QueryDocument::One(q) => Ok(vec![q]),
            QueryDocument::Many(v) => Ok(v),
        }
    }

    pub fn from_json(json: &str) -> Result<Self, CorpusError> {
        Self::new(&Self::parse_specs(json)?)
    }

    /// Loads a query file, or every `*.json` file of a directory (one
    /// document per party).
    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let io = |e| CorpusError::Io { source_name: path.display().to_string(), source: e };
        if path.is_dir() {
            let mut files: Vec<_> = std::fs::read_dir(path)
                .map_err(io)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            let mut specs = Vec::new();
            for f in files {
                let text = std::fs::read_to_string(&f)
                    .map_err(|e| CorpusError::Io { source_name: f.display().to_string(), source: e })?;
                specs.extend(Self::parse_specs(&text)?);
            }
            Self::new(&specs)
        } else {
            Self::from_json(&std::fs::read_to_string(path).map_err(io)?)
        }
    }

    pub fn bundled() -> Self {
        Self::from_json(Self::DEFAULT_JSON).expect("bundled queries are valid")
    }

    /// Parties whose queries match, in party order.
    pub fn matching_parties(&self, tokens: &[String]) -> Vec<Party> {
        self.queries.iter().filter(|q| q.matches_tokens(tokens)).map(|q| q.party).collect()
    }

    pub fn parties(&self) -> impl Iterator<Item = Party> + '_ {
        self.queries.iter().map(|q| q.party)
    }
}
