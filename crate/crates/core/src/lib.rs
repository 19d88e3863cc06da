//! Vote-share estimation from party-tagged tweet corpora.
//!
//! The pipeline runs in stages, each in its own module:
//!
//! * [`corpus`] parses archived JSON-lines tweets, matches them against
//!   per-party queries and applies the language, date-window and dedup filters.
//! * [`allegiance`] trains a multinomial Naive Bayes classifier and scores each
//!   (tweet, party) pair with an allegiance `A` in `[0, 1]`.
//! * [`models`] turns scored records into ruling-coalition vote shares under the
//!   nine election models (CVT, CVU, CAT, CAU, their geo-restricted G-variants,
//!   and the positive-allegiance ALT model).
//! * [`stats`] holds the bootstrap, quartile, Pearson and residual machinery.
//! * [`geo`] handles state assignment, census comparison and population-matched
//!   panel resampling.
//! * [`synth`] generates corpora with planted ground truth.
//!
//! Model arithmetic is generic over [`Scalar`], so the same code runs in `f64`
//! and in exact rationals ([`Exact`]).

pub mod allegiance;
pub mod corpus;
pub mod error;
pub mod geo;
pub mod models;
pub mod party;
pub mod rng;
pub mod scalar;
pub mod stats;
pub mod synth;
pub mod time;

pub use error::{Error, Result};
pub use party::{Coalition, Party};
pub use scalar::{Exact, Real, Scalar};
pub use time::{TimeWindow, YearMonth};

/// Scored record in the default floating-point representation.
pub type Record = models::AllegianceRecord<f64>;
/// Scored record with exact rational allegiance.
pub type ExactRecord = models::AllegianceRecord<Exact>;
/// Naive Bayes model in `f64`.
pub type NbModel = allegiance::MultinomialNb<f64>;
/// Model specification with `f64` ALT bounds.
pub type Spec = models::ModelSpec<f64>;
/// Model input in `f64`.
pub type Input = models::ModelInput<f64>;
/// Vote-share estimate in `f64`.
pub type Estimate = models::VoteShareEstimate<f64>;

/// Reference results the model estimates are compared against.
pub mod reference {
    use serde::{Deserialize, Serialize};

    /// Default reference data file, editable at runtime by passing a copy.
    pub const DEFAULT_TOML: &str = include_str!("../data/reference.toml");

    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    pub struct ReferenceConstants {
        pub election: String,
        /// Official ruling-coalition vote share, percent.
        pub official_ruling_pct: f64,
        /// Poll-aggregate ruling-coalition vote share, percent.
        pub poll_ruling_pct: f64,
        /// Width of the poll aggregate's uncertainty band, percentage points.
        pub poll_band_pp: f64,
    }

    impl ReferenceConstants {
        pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
            toml::from_str(text)
        }
    }

    impl Default for ReferenceConstants {
        fn default() -> Self {
            Self::from_toml(DEFAULT_TOML).expect("bundled reference file parses")
        }
    }
}
