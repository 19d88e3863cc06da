//! Synthetic corpora with planted ground truth.
//!
//! Users are drawn one by one: a home state, a supported coalition (or a
//! noise role), a tweet count from a discrete Pareto law, and a geotagging
//! flag. Each tweet then mentions a coalition and receives an allegiance
//! from the matching band. Generation is sequential from a single seeded
//! stream, so a config and seed always give the same corpus.

mod config;
mod distort;
mod generate;
mod text;

pub use config::{GeneratorConfig, StateDistribution};
pub use distort::{distortion_config, distortion_suite, Distortion, SynthCorpus};
pub use generate::{generate_corpus, generate_with, GroundTruth, SynthTweet, UserRole, UserTruth};
pub use text::{generate_labeled, render_tweet, write_text_corpus, TextConfig, NEGATIVE_WORDS, POSITIVE_WORDS};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("infeasible generator config: {0}")]
    Infeasible(String),
    #[error("config file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
