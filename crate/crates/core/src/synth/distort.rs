use serde::{Deserialize, Serialize};

use super::{generate_corpus, GeneratorConfig, GroundTruth, SynthError};
use crate::geo::StateCode;
use crate::models::AllegianceRecord;

/// Share of geotagged users living in Mexico City in the skewed variant.
pub const CAPITAL_GEO_SHARE: f64 = 0.204;
/// Ruling share among Mexico City residents in the skewed variant.
pub const CAPITAL_RULING_SHARE: f64 = 0.15;
/// Cross-mention rate of the negativity-dominant variant.
pub const NEGATIVE_CROSS_MENTION: f64 = 0.7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distortion {
    /// Most mentions are low-allegiance mentions of the other coalition.
    NegativityDominant,
    /// Mexico City residents geotag far more often and vote differently.
    CapitalSkew,
    /// One opposition account posts a large share of all tweets while
    /// everyone else posts once.
    HyperactiveMinority,
}

impl Distortion {
    pub const ALL: [Distortion; 3] =
        [Distortion::NegativityDominant, Distortion::CapitalSkew, Distortion::HyperactiveMinority];
}

pub struct SynthCorpus {
    pub variant: Distortion,
    pub config: GeneratorConfig,
    pub records: Vec<AllegianceRecord<f64>>,
    pub truth: GroundTruth,
}

/// `base` with one distortion applied.
pub fn distortion_config(base: &GeneratorConfig, variant: Distortion) -> Result<GeneratorConfig, SynthError> {
    let mut cfg = base.clone();
    match variant {
        Distortion::NegativityDominant => cfg.cross_mention = NEGATIVE_CROSS_MENTION,
        Distortion::CapitalSkew => {
            let w = cfg.state_distribution.weights()?[StateCode::MexicoCity as usize];
            if w <= 0.0 || w >= 1.0 {
                return Err(SynthError::Infeasible("capital skew needs residents in and outside Mexico City".into()));
            }
            // Solves w*m / (w*m + 1 - w) = CAPITAL_GEO_SHARE for m.
            let m = CAPITAL_GEO_SHARE / (1.0 - CAPITAL_GEO_SHARE) * (1.0 - w) / w;
            if cfg.geo_probability * m > 1.0 {
                return Err(SynthError::Infeasible(format!(
                    "geo_probability {} too high for a capital multiplier of {m:.3}",
                    cfg.geo_probability
                )));
            }
            cfg.capital_geo_multiplier = m;
            cfg.capital_ruling_share = Some(CAPITAL_RULING_SHARE);
        }
        Distortion::HyperactiveMinority => {
            cfg.hyperactive_users = 1;
            cfg.hyperactive_tweets = u32::try_from(2 * cfg.n_users).unwrap_or(u32::MAX);
            cfg.max_tweets_per_user = 1;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

/// The three distorted corpora built from `base`.
pub fn distortion_suite(base: &GeneratorConfig) -> Result<Vec<SynthCorpus>, SynthError> {
    Distortion::ALL
        .into_iter()
        .map(|variant| {
            let config = distortion_config(base, variant)?;
            let (records, truth) = generate_corpus(&config)?;
            Ok(SynthCorpus { variant, config, records, truth })
        })
        .collect()
}
