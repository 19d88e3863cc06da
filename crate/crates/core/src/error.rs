use thiserror::Error;

use crate::allegiance::AllegianceError;
use crate::corpus::CorpusError;
use crate::geo::GeoError;
use crate::models::ModelError;
use crate::stats::StatsError;
use crate::synth::SynthError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Crate-level error wrapping the per-stage errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Allegiance(#[from] AllegianceError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for estimates that are undefined on the given data (empty scope,
    /// zero allegiance mass, degenerate bootstrap).
    pub fn is_degenerate(&self) -> bool {
        match self {
            Error::Model(ModelError::Undefined { .. }) => true,
            Error::Stats(e) => e.is_degenerate(),
            Error::Geo(GeoError::Stats(e)) => e.is_degenerate(),
            _ => false,
        }
    }
}
