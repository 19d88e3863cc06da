use std::io::Write;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{generate_with, GeneratorConfig, GroundTruth, SynthError};
use crate::allegiance::{Label, LabeledExample};
use crate::corpus::ingest_date;
use crate::rng::{self, StreamRng};
use crate::Party;

pub const POSITIVE_WORDS: [&str; 10] =
    ["apoyo", "excelente", "gracias", "bien", "adelante", "orgullo", "esperanza", "fuerza", "confianza", "victoria"];
pub const NEGATIVE_WORDS: [&str; 10] =
    ["corrupto", "mentira", "fraude", "mal", "vergüenza", "robo", "fracaso", "peor", "basta", "traición"];
const FILLER_WORDS: [&str; 10] =
    ["hoy", "voto", "elección", "campaña", "candidatos", "pueblo", "junio", "debate", "propuestas", "gobierno"];
const FOREIGN_WORDS: [&str; 8] = ["great", "vote", "today", "election", "bad", "news", "support", "never"];

/// Offset separating the text stream from the structural stream, so that
/// text mode leaves the planted corpus unchanged.
const TEXT_STREAM: u64 = 0x7465_7874;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TextConfig {
    /// Sentiment words per tweet; each is positive with probability equal
    /// to the tweet's allegiance.
    pub sentiment_words: usize,
    /// Probability of a filler word after each sentiment word.
    pub filler_probability: f64,
    /// Fraction of tweets emitted in English (dropped by the language filter).
    pub foreign_fraction: f64,
}

impl Default for TextConfig {
    fn default() -> Self {
        Self { sentiment_words: 5, filler_probability: 0.3, foreign_fraction: 0.0 }
    }
}

/// Spanish tweet text mentioning `party` with sentiment drawn from `allegiance`.
pub fn render_tweet(rng: &mut StreamRng, party: Party, allegiance: f64, cfg: &TextConfig) -> String {
    let mut text = String::from(party.code());
    for _ in 0..cfg.sentiment_words {
        let pool = if rng.random::<f64>() < allegiance { &POSITIVE_WORDS } else { &NEGATIVE_WORDS };
        text.push(' ');
        text.push_str(pool.choose(rng).expect("non-empty"));
        if rng.random::<f64>() < cfg.filler_probability {
            text.push(' ');
            text.push_str(FILLER_WORDS.choose(rng).expect("non-empty"));
        }
    }
    text
}

fn render_foreign(rng: &mut StreamRng, party: Party) -> String {
    let mut text = String::from(party.code());
    for _ in 0..4 {
        text.push(' ');
        text.push_str(FOREIGN_WORDS.choose(rng).expect("non-empty"));
    }
    text
}

/// Writes the corpus for `cfg` as raw JSON-lines tweets, one mention per
/// tweet, streaming user by user.
pub fn write_text_corpus<W: Write>(cfg: &GeneratorConfig, text: &TextConfig, mut out: W) -> Result<GroundTruth, SynthError> {
    if !(0.0..=1.0).contains(&text.foreign_fraction) || !(0.0..=1.0).contains(&text.filler_probability) {
        return Err(SynthError::InvalidConfig("text probabilities must lie in [0, 1]".into()));
    }
    let mut rng = rng::stream(cfg.seed, TEXT_STREAM);
    let truth = generate_with(cfg, |_, tweets| {
        for t in tweets {
            let foreign = rng.random::<f64>() < text.foreign_fraction;
            let body = if foreign { render_foreign(&mut rng, t.party) } else { render_tweet(&mut rng, t.party, t.allegiance, text) };
            let mut obj = serde_json::json!({
                "id": t.tweet_id,
                "author_id": t.user_id,
                "created_at": ingest_date::format(&t.date),
                "text": body,
                "lang": if foreign { "en" } else { "es" },
            });
            if let Some(s) = t.region {
                obj["country"] = "MX".into();
                obj["region"] = s.name().into();
            }
            serde_json::to_writer(&mut out, &obj).map_err(std::io::Error::from)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    })?;
    out.flush()?;
    Ok(truth)
}

/// A balanced labeled training set in the generator's vocabulary.
pub fn generate_labeled(n: usize, seed: u64, cfg: &TextConfig) -> Vec<LabeledExample> {
    let mut rng = rng::seeded(seed);
    (0..n)
        .map(|_| {
            let party = *Party::ALL.choose(&mut rng).expect("non-empty");
            let label = if rng.random::<bool>() { Label::Positive } else { Label::Negative };
            let a = if label == Label::Positive { 0.85 } else { 0.15 };
            LabeledExample::new(render_tweet(&mut rng, party, a, cfg), label)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_tweet_record;

    #[test]
    fn text_corpus_parses_and_matches_structure() {
        let cfg = GeneratorConfig { n_users: 50, geo_probability: 0.5, ..Default::default() };
        let mut buf = Vec::new();
        let truth = write_text_corpus(&cfg, &TextConfig { foreign_fraction: 0.2, ..Default::default() }, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), truth.n_records);
        for (i, l) in lines.iter().enumerate() {
            let t = parse_tweet_record(l, i + 1).unwrap();
            assert!(t.lang == "es" || t.lang == "en");
        }
        let (_, plain) = super::super::generate_corpus(&cfg).unwrap();
        assert_eq!(plain, truth);
    }

    #[test]
    fn labeled_set_is_balanced_enough() {
        let ex = generate_labeled(400, 1, &TextConfig::default());
        let pos = ex.iter().filter(|e| e.label == Label::Positive).count();
        assert!((150..250).contains(&pos));
    }
}
