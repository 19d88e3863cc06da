//! Ruling-coalition vote-share models.
//!
//! Nine models are provided. The volumetric (V) models count mentions, the
//! allegiance (A) models weight them by classifier score; each works either per
//! tweet (T) or per user (U), on the complete corpus (C) or on the geotagged
//! subset (G). ALT counts users whose mean allegiance is positive toward
//! exactly one coalition.
//!
//! All arithmetic is generic over [`Scalar`](crate::Scalar).

mod estimate;
mod input;
mod record;
mod sweep;
mod user;

pub use estimate::{estimate, estimate_all, Evaluator, Share};
pub use input::{ModelInput, Observation};
pub use record::{read_records_csv, write_records_csv, AllegianceRecord};
pub use sweep::{alt_grid_sweep, grid, CellStatus, SweepCell, SweepGrid};
pub use user::{user_mean_allegiance, UserAllegiance};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{constant, to_f64};
use crate::{Coalition, Scalar, YearMonth};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ModelError {
    #[error("{model}: estimate undefined: {reason}")]
    Undefined { model: ModelId, reason: String },
    #[error("invalid ALT bounds: need 0 <= x_low <= x_upp <= 1, got ({x_low}, {x_upp})")]
    InvalidBounds { x_low: f64, x_upp: f64 },
    #[error("sweep grid is empty")]
    EmptyGrid,
    #[error("record {tweet_id}: {reason}")]
    InvalidRecord { tweet_id: String, reason: String },
    #[error("record table: {0}")]
    Table(String),
}

/// Which records a model sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Complete,
    Geo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    VolumeTweets,
    VolumeUsers,
    AllegianceTweets,
    AllegianceUsers,
    PositiveAllegiance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ModelId {
    Cvt,
    Cvu,
    Cat,
    Cau,
    Gvt,
    Gvu,
    Gat,
    Gau,
    Alt,
}

impl ModelId {
    pub const ALL: [ModelId; 9] = [
        ModelId::Cvt,
        ModelId::Cvu,
        ModelId::Cat,
        ModelId::Cau,
        ModelId::Gvt,
        ModelId::Gvu,
        ModelId::Gat,
        ModelId::Gau,
        ModelId::Alt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Cvt => "CVT",
            ModelId::Cvu => "CVU",
            ModelId::Cat => "CAT",
            ModelId::Cau => "CAU",
            ModelId::Gvt => "GVT",
            ModelId::Gvu => "GVU",
            ModelId::Gat => "GAT",
            ModelId::Gau => "GAU",
            ModelId::Alt => "ALT",
        }
    }

    pub fn scope(self) -> Scope {
        match self {
            ModelId::Gvt | ModelId::Gvu | ModelId::Gat | ModelId::Gau => Scope::Geo,
            _ => Scope::Complete,
        }
    }

    pub fn kind(self) -> ModelKind {
        match self {
            ModelId::Cvt | ModelId::Gvt => ModelKind::VolumeTweets,
            ModelId::Cvu | ModelId::Gvu => ModelKind::VolumeUsers,
            ModelId::Cat | ModelId::Gat => ModelKind::AllegianceTweets,
            ModelId::Cau | ModelId::Gau => ModelKind::AllegianceUsers,
            ModelId::Alt => ModelKind::PositiveAllegiance,
        }
    }

    pub fn of(kind: ModelKind, scope: Scope) -> ModelId {
        use ModelKind::*;
        match (kind, scope) {
            (VolumeTweets, Scope::Complete) => ModelId::Cvt,
            (VolumeUsers, Scope::Complete) => ModelId::Cvu,
            (AllegianceTweets, Scope::Complete) => ModelId::Cat,
            (AllegianceUsers, Scope::Complete) => ModelId::Cau,
            (VolumeTweets, Scope::Geo) => ModelId::Gvt,
            (VolumeUsers, Scope::Geo) => ModelId::Gvu,
            (AllegianceTweets, Scope::Geo) => ModelId::Gat,
            (AllegianceUsers, Scope::Geo) => ModelId::Gau,
            (PositiveAllegiance, _) => ModelId::Alt,
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelId::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown model `{s}` (expected one of CVT CVU CAT CAU GVT GVU GAT GAU ALT)"))
    }
}

impl From<ModelId> for String {
    fn from(m: ModelId) -> String {
        m.name().to_string()
    }
}

impl TryFrom<String> for ModelId {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Allegiance band `[x_low, x_upp]` defining a positive connotation in ALT.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AltBounds<T> {
    pub x_low: T,
    pub x_upp: T,
}

impl<T: Scalar> AltBounds<T> {
    pub fn new(x_low: T, x_upp: T) -> Result<Self, ModelError> {
        if T::zero() <= x_low && x_low <= x_upp && x_upp <= T::one() {
            Ok(Self { x_low, x_upp })
        } else {
            Err(ModelError::InvalidBounds { x_low: to_f64(&x_low), x_upp: to_f64(&x_upp) })
        }
    }

    /// Builds bounds from `f64` limits (exactly representable for rationals).
    pub fn from_f64(x_low: f64, x_upp: f64) -> Result<Self, ModelError> {
        if !(x_low.is_finite() && x_upp.is_finite()) {
            return Err(ModelError::InvalidBounds { x_low, x_upp });
        }
        Self::new(constant(x_low), constant(x_upp))
    }
}

impl<T: Scalar> AltBounds<T> {
    /// ALT vote of a user with the given mean allegiances: a coalition whose
    /// mean lies in the band while the other mean is absent or below
    /// `x_low`. Users positive toward both, or neither, get `None`.
    pub fn classify(&self, mean_ruling: Option<&T>, mean_opposition: Option<&T>) -> Option<Coalition> {
        let positive = |m: Option<&T>| m.is_some_and(|m| self.x_low <= *m && *m <= self.x_upp);
        let below = |m: Option<&T>| m.is_none_or(|m| *m < self.x_low);
        if positive(mean_ruling) && below(mean_opposition) {
            Some(Coalition::Ruling)
        } else if positive(mean_opposition) && below(mean_ruling) {
            Some(Coalition::Opposition)
        } else {
            None
        }
    }
}

impl<T: Scalar> Default for AltBounds<T> {
    /// `{0.6, 1.0}`.
    fn default() -> Self {
        Self { x_low: constant(0.6), x_upp: T::one() }
    }
}

/// A model plus its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec<T> {
    pub id: ModelId,
    /// Only read by ALT.
    pub bounds: AltBounds<T>,
}

impl<T: Scalar> ModelSpec<T> {
    pub fn new(id: ModelId) -> Self {
        Self { id, bounds: AltBounds::default() }
    }

    pub fn alt(bounds: AltBounds<T>) -> Self {
        Self { id: ModelId::Alt, bounds }
    }

    /// The nine models with default ALT bounds.
    pub fn all() -> Vec<Self> {
        ModelId::ALL.into_iter().map(Self::new).collect()
    }
}

/// One model's ruling-coalition share for one month.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VoteShareEstimate<T> {
    pub model: ModelId,
    pub month: Option<YearMonth>,
    pub ruling_share: T,
    /// In-scope records (resample multiplicities included).
    pub records: u64,
    /// Users counted by the model: voters for U/ALT models, distinct authors
    /// for T models.
    pub users: u64,
}

impl<T: Scalar> VoteShareEstimate<T> {
    /// Always `1 - ruling_share`.
    pub fn opposition_share(&self) -> T {
        T::one() - self.ruling_share.clone()
    }
}

fn single<T: Scalar>(
    records: &[AllegianceRecord<T>],
    id: ModelId,
    bounds: AltBounds<T>,
) -> Result<VoteShareEstimate<T>, ModelError> {
    let input = ModelInput::from_records(records);
    let s = estimate(&ModelSpec { id, bounds }, &input, None)?;
    Ok(VoteShareEstimate { model: id, month: None, ruling_share: s.ruling, records: s.records, users: s.users })
}

/// Volumetric tweet model: share of in-scope records labeled ruling.
pub fn model_vt<T: Scalar>(records: &[AllegianceRecord<T>], scope: Scope) -> Result<VoteShareEstimate<T>, ModelError> {
    single(records, ModelId::of(ModelKind::VolumeTweets, scope), AltBounds::default())
}

/// Volumetric user model: majority coalition per user, ties excluded.
pub fn model_vu<T: Scalar>(records: &[AllegianceRecord<T>], scope: Scope) -> Result<VoteShareEstimate<T>, ModelError> {
    single(records, ModelId::of(ModelKind::VolumeUsers, scope), AltBounds::default())
}

/// Allegiance tweet model: `S0 / (S0 + S1)` with `S_y` the summed allegiance.
pub fn model_at<T: Scalar>(records: &[AllegianceRecord<T>], scope: Scope) -> Result<VoteShareEstimate<T>, ModelError> {
    single(records, ModelId::of(ModelKind::AllegianceTweets, scope), AltBounds::default())
}

/// Allegiance user model: totals of per-user mean allegiance per coalition.
pub fn model_au<T: Scalar>(records: &[AllegianceRecord<T>], scope: Scope) -> Result<VoteShareEstimate<T>, ModelError> {
    single(records, ModelId::of(ModelKind::AllegianceUsers, scope), AltBounds::default())
}

/// Positive-allegiance model on the complete data.
pub fn model_alt<T: Scalar>(
    records: &[AllegianceRecord<T>],
    bounds: AltBounds<T>,
) -> Result<VoteShareEstimate<T>, ModelError> {
    single(records, ModelId::Alt, bounds)
}
