//! Geography: state assignment, census comparison and population-matched
//! panel resampling.

mod assign;
mod census;
mod distribution;
mod report;
mod resample;
mod state;

pub use assign::{aggregate_users_by_state, assign_user_states};
pub use census::{internet_distribution, population_2020, population_distribution, read_census_csv, CensusRow};
pub use distribution::{merge_greater_mexico_city, total_variation, Region, RegionDistribution};
pub use report::{representativeness_report, CorrelationSet, RepresentativenessReport};
pub use resample::{largest_remainder, population_weighted_resample, PanelConfig, PanelResample};
pub use state::{is_mexico, StateCode};

use thiserror::Error;

use crate::stats::StatsError;

#[derive(Debug, Error)]
pub enum GeoError {
    #[error("no users with Mexican geodata")]
    NoGeoUsers,
    #[error("distribution lacks states: {0}")]
    MissingStates(String),
    #[error("distribution already merges Greater Mexico City")]
    AlreadyMerged,
    #[error("expected a per-state distribution")]
    NotStateLevel,
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("census table: {0}")]
    Census(String),
    #[error("panel of {requested} users requested but only {available} geolocated users are available")]
    PanelTooLarge { requested: usize, available: usize },
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
