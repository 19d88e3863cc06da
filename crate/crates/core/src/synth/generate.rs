use std::collections::BTreeMap;

use chrono::{DateTime, Duration, Utc};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{GeneratorConfig, SynthError};
use crate::geo::StateCode;
use crate::models::AllegianceRecord;
use crate::rng::{self, StreamRng};
use crate::{Coalition, Party};

const RULING_PARTIES: [(Party, f64); 3] = [(Party::Morena, 0.8), (Party::Pt, 0.1), (Party::Pvem, 0.1)];
const OPPOSITION_PARTIES: [(Party, f64); 7] = [
    (Party::Pan, 0.35),
    (Party::Pri, 0.3),
    (Party::Prd, 0.1),
    (Party::Mc, 0.15),
    (Party::Pes, 0.04),
    (Party::Fxm, 0.03),
    (Party::Rsp, 0.03),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "role", content = "coalition")]
pub enum UserRole {
    Supporter(Coalition),
    /// An account without a vote, posting mid-range allegiances.
    Noise,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserTruth {
    pub user_id: String,
    pub state: StateCode,
    pub role: UserRole,
    pub tweets: u32,
    pub geotagged: bool,
}

impl UserTruth {
    pub fn support(&self) -> Option<Coalition> {
        match self.role {
            UserRole::Supporter(c) => Some(c),
            UserRole::Noise => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub configured_share: f64,
    /// Ruling share among supporters actually drawn; `None` with no supporters.
    pub realized_share: Option<f64>,
    pub users: Vec<UserTruth>,
    /// Users per home state.
    pub state_users: BTreeMap<StateCode, usize>,
    /// Geotagging users per home state.
    pub geo_state_users: BTreeMap<StateCode, usize>,
    pub n_records: usize,
}

/// One generated (tweet, party) mention.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthTweet {
    pub tweet_id: String,
    pub user_id: String,
    pub party: Party,
    pub allegiance: f64,
    pub date: DateTime<Utc>,
    pub region: Option<StateCode>,
}

impl SynthTweet {
    pub fn coalition(&self) -> Coalition {
        self.party.coalition()
    }

    pub fn to_record(&self) -> AllegianceRecord<f64> {
        AllegianceRecord::new(
            self.tweet_id.clone(),
            self.user_id.clone(),
            self.party,
            self.allegiance,
            self.date,
            self.region,
        )
        .expect("generated allegiance lies in [0, 1]")
    }
}

/// Discrete Pareto draw with `P(N >= n) = n^-a`, capped at `max`.
fn tweet_count(rng: &mut StreamRng, a: f64, max: u32) -> u32 {
    let u = 1.0 - rng.random::<f64>();
    let n = u.powf(-1.0 / a).floor();
    if n >= max as f64 {
        max
    } else {
        n as u32
    }
}

fn band(rng: &mut StreamRng, mean: f64, spread: f64) -> f64 {
    (mean + spread * (2.0 * rng.random::<f64>() - 1.0)).clamp(0.0, 1.0)
}

struct PartyPicker {
    ruling: WeightedIndex<f64>,
    opposition: WeightedIndex<f64>,
}

impl PartyPicker {
    fn new() -> Self {
        Self {
            ruling: WeightedIndex::new(RULING_PARTIES.iter().map(|p| p.1)).expect("positive weights"),
            opposition: WeightedIndex::new(OPPOSITION_PARTIES.iter().map(|p| p.1)).expect("positive weights"),
        }
    }

    fn pick(&self, rng: &mut StreamRng, c: Coalition) -> Party {
        match c {
            Coalition::Ruling => RULING_PARTIES[self.ruling.sample(rng)].0,
            Coalition::Opposition => OPPOSITION_PARTIES[self.opposition.sample(rng)].0,
        }
    }
}

fn coin(rng: &mut StreamRng) -> Coalition {
    if rng.random::<bool>() {
        Coalition::Ruling
    } else {
        Coalition::Opposition
    }
}

/// Generates users in order, handing each user's tweets to `sink` as soon
/// as they are drawn. Memory use is independent of the tweet count.
pub fn generate_with<F>(cfg: &GeneratorConfig, mut sink: F) -> Result<GroundTruth, SynthError>
where
    F: FnMut(&UserTruth, &[SynthTweet]) -> Result<(), SynthError>,
{
    cfg.validate()?;
    let mut rng = rng::seeded(cfg.seed);
    let states = WeightedIndex::new(cfg.state_distribution.weights()?)
        .map_err(|e| SynthError::Infeasible(e.to_string()))?;
    let shares = cfg.state_ruling_shares()?;
    let parties = PartyPicker::new();
    let start = cfg.start_month.start();
    let mut end_month = cfg.start_month;
    for _ in 0..cfg.months {
        end_month = end_month.next();
    }
    let span = (end_month.start() - start).num_seconds();

    let mut truth = GroundTruth {
        configured_share: cfg.true_ruling_share,
        realized_share: None,
        users: Vec::with_capacity(cfg.n_users),
        state_users: BTreeMap::new(),
        geo_state_users: BTreeMap::new(),
        n_records: 0,
    };
    let (mut ruling, mut voters) = (0usize, 0usize);
    let mut tweets = Vec::new();
    for i in 0..cfg.n_users {
        let state = StateCode::ALL[states.sample(&mut rng)];
        let hyper = i < cfg.hyperactive_users;
        let role = if hyper {
            UserRole::Supporter(Coalition::Opposition)
        } else if rng.random::<f64>() < cfg.noise_fraction {
            UserRole::Noise
        } else if rng.random::<f64>() < shares[state as usize] {
            UserRole::Supporter(Coalition::Ruling)
        } else {
            UserRole::Supporter(Coalition::Opposition)
        };
        let n = if hyper {
            cfg.hyperactive_tweets
        } else {
            tweet_count(&mut rng, cfg.tail_index, cfg.max_tweets_per_user)
        };
        let geo_p = if state == StateCode::MexicoCity {
            (cfg.geo_probability * cfg.capital_geo_multiplier).min(1.0)
        } else {
            cfg.geo_probability
        };
        let geotagged = rng.random::<f64>() < geo_p;
        let user = UserTruth { user_id: format!("u{i:06}"), state, role, tweets: n, geotagged };

        let noise_side = coin(&mut rng);
        tweets.clear();
        for _ in 0..n {
            let (coalition, allegiance) = match role {
                UserRole::Supporter(own) => {
                    if rng.random::<f64>() < cfg.cross_mention {
                        (own.other(), band(&mut rng, cfg.detractor_mean, cfg.detractor_spread))
                    } else {
                        (own, band(&mut rng, cfg.supporter_mean, cfg.supporter_spread))
                    }
                }
                UserRole::Noise => {
                    let c = if cfg.noise_both_coalitions { coin(&mut rng) } else { noise_side };
                    (c, band(&mut rng, cfg.noise_mean, cfg.noise_spread))
                }
            };
            let party = parties.pick(&mut rng, coalition);
            let date = start + Duration::seconds(rng.random_range(0..span));
            tweets.push(SynthTweet {
                tweet_id: format!("t{:09}", truth.n_records),
                user_id: user.user_id.clone(),
                party,
                allegiance,
                date,
                region: geotagged.then_some(state),
            });
            truth.n_records += 1;
        }
        sink(&user, &tweets)?;

        if let UserRole::Supporter(c) = role {
            voters += 1;
            ruling += usize::from(c == Coalition::Ruling);
        }
        *truth.state_users.entry(state).or_default() += 1;
        if geotagged {
            *truth.geo_state_users.entry(state).or_default() += 1;
        }
        truth.users.push(user);
    }
    truth.realized_share = (voters > 0).then(|| ruling as f64 / voters as f64);
    Ok(truth)
}

/// Generates a scored corpus in memory.
pub fn generate_corpus(cfg: &GeneratorConfig) -> Result<(Vec<AllegianceRecord<f64>>, GroundTruth), SynthError> {
    let mut records = Vec::new();
    let truth = generate_with(cfg, |_, tweets| {
        records.extend(tweets.iter().map(SynthTweet::to_record));
        Ok(())
    })?;
    Ok((records, truth))
}
