use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{AllegianceError, MultinomialNb};
use crate::corpus::MatchedTweet;
use crate::models::AllegianceRecord;
use crate::Party;

/// Parties sharing one classifier, written `MORENA+PT`; `*` is the fallback
/// for parties without their own group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PartyGroup {
    Parties(Vec<Party>),
    Default,
}

impl PartyGroup {
    /// The seven groups used for training in the reference study.
    pub fn standard() -> Vec<PartyGroup> {
        ["MORENA+PT", "PVEM", "PAN", "PRI", "PRD", "MC", "PES+FxM+RSP"]
            .iter()
            .map(|g| g.parse().expect("valid group"))
            .collect()
    }
}

impl fmt::Display for PartyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartyGroup::Default => f.write_str("*"),
            PartyGroup::Parties(ps) => {
                let codes: Vec<&str> = ps.iter().map(|p| p.code()).collect();
                f.write_str(&codes.join("+"))
            }
        }
    }
}

impl FromStr for PartyGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "*" {
            return Ok(PartyGroup::Default);
        }
        let mut parties = Vec::new();
        for part in s.split('+') {
            let p: Party = part.trim().parse().map_err(|e| format!("{e}"))?;
            if parties.contains(&p) {
                return Err(format!("party {p} listed twice in `{s}`"));
            }
            parties.push(p);
        }
        Ok(PartyGroup::Parties(parties))
    }
}

/// Routes each (tweet, party) pair to its group's classifier.
pub struct Scorer {
    models: Vec<MultinomialNb<f64>>,
    by_party: [Option<usize>; 10],
    fallback: Option<usize>,
}

impl Scorer {
    pub fn new(groups: Vec<(PartyGroup, MultinomialNb<f64>)>) -> Result<Self, AllegianceError> {
        let mut by_party = [None; 10];
        let mut fallback = None;
        let mut models = Vec::with_capacity(groups.len());
        for (i, (group, model)) in groups.into_iter().enumerate() {
            match group {
                PartyGroup::Default => {
                    if fallback.replace(i).is_some() {
                        return Err(AllegianceError::Artifact("more than one default model".into()));
                    }
                }
                PartyGroup::Parties(ps) => {
                    for p in ps {
                        if by_party[p as usize].replace(i).is_some() {
                            return Err(AllegianceError::Artifact(format!("party {p} has more than one model")));
                        }
                    }
                }
            }
            models.push(model);
        }
        Ok(Self { models, by_party, fallback })
    }

    pub fn model_for(&self, party: Party) -> Option<&MultinomialNb<f64>> {
        self.by_party[party as usize].or(self.fallback).map(|i| &self.models[i])
    }

    /// Scores every record, preserving input order.
    pub fn score(&self, tweets: &[MatchedTweet]) -> Result<Vec<AllegianceRecord<f64>>, AllegianceError> {
        if let Some(t) = tweets.iter().find(|t| self.model_for(t.party).is_none()) {
            return Err(AllegianceError::MissingModel(t.party));
        }
        Ok(tweets
            .par_iter()
            .map(|t| {
                let a = self.model_for(t.party).expect("checked above").predict(&t.text);
                AllegianceRecord {
                    tweet_id: t.tweet_id.clone(),
                    user_id: t.user_id.clone(),
                    region: t.region,
                    country: t.country.clone(),
                    party: t.party,
                    allegiance: a,
                    date: t.created_at,
                    coalition: t.party.coalition(),
                }
            })
            .collect())
    }
}
