use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{assign_user_states, GeoError, Region, RegionDistribution, StateCode};
use crate::models::{AllegianceRecord, Evaluator, ModelInput, ModelSpec};
use crate::scalar::to_f64;
use crate::stats::{run_replicates, summarize, BootstrapResult, StatsError};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PanelConfig {
    /// Users drawn per repetition.
    pub panel_size: usize,
    pub repetitions: usize,
    pub seed: u64,
}

impl Default for PanelConfig {
    fn default() -> Self {
        Self { panel_size: 1000, repetitions: 1000, seed: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct PanelResample {
    /// One summary per requested model, in request order.
    pub results: Vec<Result<BootstrapResult, StatsError>>,
    /// Users drawn from each state per repetition.
    pub quotas: BTreeMap<StateCode, usize>,
    /// States with target mass but no geolocated users; their mass was
    /// spread over the others.
    pub dropped_states: Vec<StateCode>,
}

impl PanelResample {
    /// State distribution of each drawn panel.
    pub fn drawn(&self) -> Result<RegionDistribution, GeoError> {
        RegionDistribution::from_state_counts(self.quotas.iter().map(|(s, q)| (*s, *q as f64)))
    }
}

/// Hamilton apportionment of `k` seats by `weights`. Remainder ties go to the
/// lower index.
pub fn largest_remainder(weights: &[f64], k: usize) -> Vec<usize> {
    let total: f64 = weights.iter().sum();
    if total <= 0.0 || k == 0 {
        return vec![0; weights.len()];
    }
    let exact: Vec<f64> = weights.iter().map(|w| w / total * k as f64).collect();
    let mut seats: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let assigned: usize = seats.iter().sum();
    let mut order: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > 0.0).collect();
    order.sort_by(|&a, &b| (exact[b] - exact[b].floor()).total_cmp(&(exact[a] - exact[a].floor())).then(a.cmp(&b)));
    for &i in order.iter().cycle().take(k.saturating_sub(assigned)) {
        seats[i] += 1;
    }
    seats
}

/// Apportions `k` by `weights` without exceeding `caps`; seats a full state
/// cannot take are re-apportioned among the others.
fn capped_quotas(weights: &[f64], caps: &[usize], k: usize) -> Vec<usize> {
    let mut quota = vec![0; weights.len()];
    let mut active: Vec<bool> = weights.iter().zip(caps).map(|(w, c)| *w > 0.0 && *c > 0).collect();
    let mut remaining = k;
    while remaining > 0 {
        let w: Vec<f64> = weights.iter().zip(&active).map(|(w, a)| if *a { *w } else { 0.0 }).collect();
        let seats = largest_remainder(&w, remaining);
        remaining = 0;
        for i in 0..weights.len() {
            if !active[i] {
                continue;
            }
            let q = quota[i] + seats[i];
            if q >= caps[i] {
                remaining += q - caps[i];
                quota[i] = caps[i];
                active[i] = false;
            } else {
                quota[i] = q;
            }
        }
        if !active.iter().any(|a| *a) {
            break;
        }
    }
    quota
}

/// Draws population-matched user panels and re-estimates each model on the
/// selected users' records.
///
/// Every repetition draws `panel_size` distinct geolocated users, with state
/// quotas apportioned from `target`. Users are placed in their modal state.
pub fn population_weighted_resample<T: Scalar>(
    records: &[AllegianceRecord<T>],
    target: &RegionDistribution,
    specs: &[ModelSpec<T>],
    cfg: &PanelConfig,
) -> Result<PanelResample, GeoError> {
    if target.get(Region::GreaterMexicoCity).is_some() {
        return Err(GeoError::NotStateLevel);
    }
    if cfg.repetitions == 0 {
        return Err(StatsError::NoResamples.into());
    }
    let input = ModelInput::from_records(records);
    let states = assign_user_states(records);
    if states.is_empty() {
        return Err(GeoError::NoGeoUsers);
    }
    let index: std::collections::HashMap<&str, u32> =
        input.user_ids.iter().enumerate().map(|(i, u)| (u.as_str(), i as u32)).collect();
    let mut pools: Vec<Vec<u32>> = vec![Vec::new(); StateCode::ALL.len()];
    // BTreeMap iteration keeps each pool ordered by user id.
    for (user, state) in &states {
        pools[*state as usize].push(index[user.as_str()]);
    }

    let mut dropped_states = Vec::new();
    let weights: Vec<f64> = StateCode::ALL
        .iter()
        .map(|s| {
            let w = target.state(*s);
            if w > 0.0 && pools[*s as usize].is_empty() {
                log::warn!("no geolocated users in {}; redistributing its {:.2}% of the panel", s.code(), w);
                dropped_states.push(*s);
                0.0
            } else {
                w
            }
        })
        .collect();
    let caps: Vec<usize> = pools.iter().map(Vec::len).collect();
    let available: usize = caps.iter().zip(&weights).filter(|(_, w)| **w > 0.0).map(|(c, _)| *c).sum();
    if available < cfg.panel_size {
        return Err(GeoError::PanelTooLarge { requested: cfg.panel_size, available });
    }
    let quotas = capped_quotas(&weights, &caps, cfg.panel_size);
    for (s, (q, w)) in StateCode::ALL.iter().zip(quotas.iter().zip(&weights)) {
        let ideal = w / 100.0 * cfg.panel_size as f64;
        if (*q as f64) + 1.0 < ideal {
            log::warn!("{} holds {} users, below its quota of {:.1}", s.code(), q, ideal);
        }
    }

    let by_user = input.observations_by_user();
    let per_rep: Vec<Vec<Result<f64, String>>> = run_replicates(cfg.repetitions, cfg.seed, |rng| {
        let mut w = vec![0u32; input.len()];
        for (pool, &q) in pools.iter().zip(&quotas) {
            if q == 0 {
                continue;
            }
            for j in rand::seq::index::sample(rng, pool.len(), q) {
                for &o in &by_user[pool[j] as usize] {
                    w[o as usize] = 1;
                }
            }
        }
        let ev = Evaluator::new(&input, Some(&w));
        specs.iter().map(|s| ev.estimate(s).map(|sh| to_f64(&sh.ruling)).map_err(|e| e.to_string())).collect()
    });
    let results = specs
        .iter()
        .enumerate()
        .map(|(k, spec)| {
            let mut first_error = None;
            let samples = per_rep
                .iter()
                .map(|rep| match &rep[k] {
                    Ok(v) => Some(*v),
                    Err(e) => {
                        first_error.get_or_insert_with(|| e.clone());
                        None
                    }
                })
                .collect();
            summarize(spec.id.name(), samples, cfg.seed, first_error)
        })
        .collect();
    Ok(PanelResample {
        results,
        quotas: StateCode::ALL.iter().copied().zip(quotas).filter(|(_, q)| *q > 0).collect(),
        dropped_states,
    })
}
