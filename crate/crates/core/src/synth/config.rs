use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SynthError;
use crate::geo::{population_2020, StateCode};
use crate::YearMonth;

/// How home states are drawn.
///
/// Text forms: `population`, `uniform`, `single:XX`, or
/// `custom:XX=w,YY=w,...` with non-negative weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum StateDistribution {
    Population,
    Uniform,
    Single(StateCode),
    Custom(BTreeMap<StateCode, f64>),
}

impl StateDistribution {
    /// Weights in [`StateCode::ALL`] order, normalized to sum 1.
    pub fn weights(&self) -> Result<Vec<f64>, SynthError> {
        let raw: Vec<f64> = match self {
            Self::Population => population_2020().iter().map(|r| r.population as f64).collect(),
            Self::Uniform => vec![1.0; 32],
            Self::Single(s) => StateCode::ALL.iter().map(|t| if t == s { 1.0 } else { 0.0 }).collect(),
            Self::Custom(m) => StateCode::ALL.iter().map(|s| m.get(s).copied().unwrap_or(0.0)).collect(),
        };
        if raw.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(SynthError::InvalidConfig("state weights must be finite and non-negative".into()));
        }
        let total: f64 = raw.iter().sum();
        if total <= 0.0 {
            return Err(SynthError::Infeasible("state distribution is empty".into()));
        }
        Ok(raw.into_iter().map(|w| w / total).collect())
    }
}

impl fmt::Display for StateDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Population => f.write_str("population"),
            Self::Uniform => f.write_str("uniform"),
            Self::Single(s) => write!(f, "single:{}", s.code()),
            Self::Custom(m) => {
                let parts: Vec<String> = m.iter().map(|(s, w)| format!("{}={}", s.code(), w)).collect();
                write!(f, "custom:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for StateDistribution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "population" => return Ok(Self::Population),
            "uniform" => return Ok(Self::Uniform),
            _ => {}
        }
        if let Some(code) = s.strip_prefix("single:") {
            return code.parse().map(Self::Single);
        }
        if let Some(body) = s.strip_prefix("custom:") {
            let mut m = BTreeMap::new();
            for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (code, w) = part.split_once('=').ok_or_else(|| format!("expected XX=weight, got `{part}`"))?;
                let w: f64 = w.trim().parse().map_err(|e| format!("weight `{w}`: {e}"))?;
                m.insert(code.parse()?, w);
            }
            return Ok(Self::Custom(m));
        }
        Err(format!("unknown state distribution `{s}`"))
    }
}

impl From<StateDistribution> for String {
    fn from(d: StateDistribution) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for StateDistribution {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Generator parameters; also readable from a flat TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub n_users: usize,
    /// Expected share of supporters backing the ruling coalition.
    pub true_ruling_share: f64,
    /// Tweets per user follow `P(N >= n) = n^-tail_index`, capped.
    pub tail_index: f64,
    pub max_tweets_per_user: u32,
    /// Allegiance of a supporter's tweets about their own coalition is
    /// uniform on `mean ± spread`.
    pub supporter_mean: f64,
    pub supporter_spread: f64,
    /// Same for tweets about the other coalition.
    pub detractor_mean: f64,
    pub detractor_spread: f64,
    /// Probability that a supporter's tweet targets the other coalition.
    pub cross_mention: f64,
    /// Probability that a user geotags (all of their tweets).
    pub geo_probability: f64,
    pub state_distribution: StateDistribution,
    /// Multiplies the geotagging probability of Mexico City residents.
    pub capital_geo_multiplier: f64,
    /// Ruling share among Mexico City residents; the other states are
    /// shifted so the nationwide expectation stays `true_ruling_share`.
    pub capital_ruling_share: Option<f64>,
    /// Fraction of users that are noise accounts without a vote.
    pub noise_fraction: f64,
    pub noise_mean: f64,
    pub noise_spread: f64,
    /// Noise accounts mention both coalitions rather than a single one.
    pub noise_both_coalitions: bool,
    /// The first `hyperactive_users` users back the opposition and post
    /// `hyperactive_tweets` each.
    pub hyperactive_users: usize,
    pub hyperactive_tweets: u32,
    pub start_month: YearMonth,
    pub months: u32,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            n_users: 10_000,
            true_ruling_share: 0.44,
            tail_index: 2.5,
            max_tweets_per_user: 1000,
            supporter_mean: 0.9,
            supporter_spread: 0.05,
            detractor_mean: 0.04,
            detractor_spread: 0.04,
            cross_mention: 0.0,
            geo_probability: 0.1,
            state_distribution: StateDistribution::Population,
            capital_geo_multiplier: 1.0,
            capital_ruling_share: None,
            noise_fraction: 0.0,
            noise_mean: 0.5,
            noise_spread: 0.15,
            noise_both_coalitions: false,
            hyperactive_users: 0,
            hyperactive_tweets: 0,
            start_month: YearMonth::new(2021, 5).expect("valid month"),
            months: 1,
        }
    }
}

fn check_probability(name: &str, p: f64) -> Result<(), SynthError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(SynthError::InvalidConfig(format!("{name} = {p} is outside [0, 1]")))
    }
}

fn check_band(name: &str, mean: f64, spread: f64) -> Result<(), SynthError> {
    if spread >= 0.0 && mean - spread >= 0.0 && mean + spread <= 1.0 {
        Ok(())
    } else {
        Err(SynthError::InvalidConfig(format!("{name} band {mean} ± {spread} leaves [0, 1]")))
    }
}

impl GeneratorConfig {
    pub fn from_toml(text: &str) -> Result<Self, SynthError> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        if self.n_users == 0 {
            return Err(SynthError::InvalidConfig("n_users must be at least 1".into()));
        }
        check_probability("true_ruling_share", self.true_ruling_share)?;
        check_probability("cross_mention", self.cross_mention)?;
        check_probability("geo_probability", self.geo_probability)?;
        check_probability("noise_fraction", self.noise_fraction)?;
        if let Some(c) = self.capital_ruling_share {
            check_probability("capital_ruling_share", c)?;
        }
        check_band("supporter", self.supporter_mean, self.supporter_spread)?;
        check_band("detractor", self.detractor_mean, self.detractor_spread)?;
        check_band("noise", self.noise_mean, self.noise_spread)?;
        if self.tail_index.is_nan() || self.tail_index <= 0.0 {
            return Err(SynthError::InvalidConfig("tail_index must be positive".into()));
        }
        if self.max_tweets_per_user == 0 {
            return Err(SynthError::InvalidConfig("max_tweets_per_user must be at least 1".into()));
        }
        if self.hyperactive_users > self.n_users {
            return Err(SynthError::InvalidConfig("more hyperactive users than users".into()));
        }
        if self.hyperactive_users > 0 && self.hyperactive_tweets == 0 {
            return Err(SynthError::InvalidConfig("hyperactive_tweets must be at least 1".into()));
        }
        if !(self.capital_geo_multiplier >= 0.0 && self.capital_geo_multiplier.is_finite()) {
            return Err(SynthError::InvalidConfig("capital_geo_multiplier must be non-negative".into()));
        }
        if self.months == 0 {
            return Err(SynthError::InvalidConfig("months must be at least 1".into()));
        }
        self.state_ruling_shares()?;
        Ok(())
    }

    /// Ruling share for residents of each state, in [`StateCode::ALL`] order.
    pub fn state_ruling_shares(&self) -> Result<Vec<f64>, SynthError> {
        let weights = self.state_distribution.weights()?;
        let Some(capital) = self.capital_ruling_share else {
            return Ok(vec![self.true_ruling_share; 32]);
        };
        let w = weights[StateCode::MexicoCity as usize];
        if w >= 1.0 {
            return Err(SynthError::Infeasible("capital_ruling_share needs residents outside Mexico City".into()));
        }
        let rest = (self.true_ruling_share - w * capital) / (1.0 - w);
        if !(0.0..=1.0).contains(&rest) {
            return Err(SynthError::Infeasible(format!(
                "capital share {capital} forces a share of {rest:.4} elsewhere"
            )));
        }
        Ok(StateCode::ALL.iter().map(|s| if *s == StateCode::MexicoCity { capital } else { rest }).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_roundtrip_and_defaults() {
        let cfg = GeneratorConfig::from_toml("seed = 3\nn_users = 10\nstate_distribution = \"single:JC\"\n").unwrap();
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.state_distribution, StateDistribution::Single(StateCode::Jalisco));
        assert_eq!(cfg.true_ruling_share, 0.44);
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(GeneratorConfig::from_toml(&text).unwrap(), cfg);
        assert!(GeneratorConfig::from_toml("bogus = 1").is_err());
    }

    #[test]
    fn invalid_and_infeasible() {
        let bad = GeneratorConfig { true_ruling_share: 1.5, ..Default::default() };
        assert!(matches!(bad.validate(), Err(SynthError::InvalidConfig(_))));
        let empty = GeneratorConfig { state_distribution: "custom:".parse().unwrap(), ..Default::default() };
        assert!(matches!(empty.validate(), Err(SynthError::Infeasible(_))));
        let skew = GeneratorConfig { capital_ruling_share: Some(1.0), true_ruling_share: 0.01, ..Default::default() };
        assert!(matches!(skew.validate(), Err(SynthError::Infeasible(_))));
    }

    #[test]
    fn capital_adjustment_preserves_expectation() {
        let cfg = GeneratorConfig { capital_ruling_share: Some(0.15), ..Default::default() };
        let w = cfg.state_distribution.weights().unwrap();
        let s = cfg.state_ruling_shares().unwrap();
        let expected: f64 = w.iter().zip(&s).map(|(a, b)| a * b).sum();
        assert!((expected - 0.44).abs() < 1e-12);
    }
}
