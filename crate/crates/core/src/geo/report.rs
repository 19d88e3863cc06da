use serde::Serialize;

use super::{
    internet_distribution, merge_greater_mexico_city, population_distribution, CensusRow, GeoError, Region,
    RegionDistribution,
};
use crate::stats::{pearson_r, residuals, CorrelationReport, Residuals};

/// Pearson correlations between the three distributions. Internet-user
/// pairs are absent when the census has no internet counts.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationSet {
    pub population_internet: Option<CorrelationReport<f64>>,
    pub population_twitter: CorrelationReport<f64>,
    pub internet_twitter: Option<CorrelationReport<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepresentativenessReport {
    pub population: RegionDistribution,
    pub internet: Option<RegionDistribution>,
    pub twitter: RegionDistribution,
    pub per_state: CorrelationSet,
    /// Same correlations with Greater Mexico City as one region.
    pub merged: CorrelationSet,
    pub residual_population_internet: Option<Residuals>,
    pub residual_population_twitter: Residuals,
    /// Largest population-minus-Twitter residual outside Greater Mexico City.
    pub max_residual_outside_gmc: Option<(Region, f64)>,
}

fn correlate(a: &RegionDistribution, b: &RegionDistribution, x: &str, y: &str) -> Result<CorrelationReport<f64>, GeoError> {
    // Residuals double as the region-set check.
    residuals(a, b)?;
    Ok(pearson_r(&a.values(), &b.values())?.labeled(x, y))
}

fn correlation_set(
    pop: &RegionDistribution,
    net: Option<&RegionDistribution>,
    tw: &RegionDistribution,
) -> Result<CorrelationSet, GeoError> {
    Ok(CorrelationSet {
        population_internet: net.map(|n| correlate(pop, n, "population", "internet")).transpose()?,
        population_twitter: correlate(pop, tw, "population", "twitter")?,
        internet_twitter: net.map(|n| correlate(n, tw, "internet", "twitter")).transpose()?,
    })
}

/// Compares the geolocated-user distribution with census population and,
/// when available, internet users.
pub fn representativeness_report(
    census: &[CensusRow],
    twitter: &RegionDistribution,
) -> Result<RepresentativenessReport, GeoError> {
    let population = population_distribution(census)?;
    let internet = if census.iter().all(|r| r.internet_users.is_some()) {
        Some(internet_distribution(census)?)
    } else {
        None
    };
    let per_state = correlation_set(&population, internet.as_ref(), twitter)?;
    let merged_pop = merge_greater_mexico_city(&population)?;
    let merged_net = internet.as_ref().map(merge_greater_mexico_city).transpose()?;
    let merged_tw = merge_greater_mexico_city(twitter)?;
    let merged = correlation_set(&merged_pop, merged_net.as_ref(), &merged_tw)?;
    let residual_population_internet = internet.as_ref().map(|n| residuals(&population, n)).transpose()?;
    let residual_population_twitter = residuals(&population, twitter)?;
    let max_residual_outside_gmc = residual_population_twitter
        .max_abs_where(|r| matches!(r, Region::State(s) if !s.is_greater_mexico_city()));
    Ok(RepresentativenessReport {
        population,
        internet,
        twitter: twitter.clone(),
        per_state,
        merged,
        residual_population_internet,
        residual_population_twitter,
        max_residual_outside_gmc,
    })
}
