use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{quantile_sorted, StatsError};
use crate::models::{Evaluator, ModelInput, ModelSpec};
use crate::rng::{self, StreamRng};
use crate::scalar::to_f64;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub n_resamples: usize,
    pub seed: u64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self { n_resamples: 1000, seed: 0 }
    }
}

/// Distribution of a statistic over resamples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapResult {
    pub n_resamples: usize,
    pub seed: u64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    /// Resamples on which the statistic was undefined.
    pub n_undefined: usize,
    /// Per-resample values in replicate order; `None` where undefined.
    #[serde(skip)]
    pub samples: Vec<Option<f64>>,
}

impl BootstrapResult {
    /// Interquartile width in percentage points.
    pub fn precision_pp(&self) -> f64 {
        (self.q3 - self.q1) * 100.0
    }

    pub fn defined(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().flatten().copied()
    }
}

/// Runs `n` replicates; replicate `i` draws from `rng::stream(seed, i)`.
/// Results come back in replicate order whatever the thread count.
pub fn run_replicates<R, F>(n: usize, seed: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&mut StreamRng) -> R + Sync,
{
    (0..n).into_par_iter().map(|i| f(&mut rng::stream(seed, i as u64))).collect()
}

/// Quartile summary over the defined samples. Fails when more than half of
/// the replicates are undefined.
pub fn summarize(
    label: &str,
    samples: Vec<Option<f64>>,
    seed: u64,
    first_error: Option<String>,
) -> Result<BootstrapResult, StatsError> {
    let total = samples.len();
    if total == 0 {
        return Err(StatsError::NoResamples);
    }
    let mut defined: Vec<f64> = samples.iter().flatten().copied().collect();
    let undefined = total - defined.len();
    if 2 * undefined > total {
        return Err(StatsError::Degenerate {
            label: label.to_string(),
            undefined,
            total,
            reason: first_error.unwrap_or_else(|| "undefined".into()),
        });
    }
    defined.sort_by(f64::total_cmp);
    Ok(BootstrapResult {
        n_resamples: total,
        seed,
        median: quantile_sorted(&defined, 0.5),
        q1: quantile_sorted(&defined, 0.25),
        q3: quantile_sorted(&defined, 0.75),
        n_undefined: undefined,
        samples,
    })
}

/// Multinomial resample of `n` records: `w[i]` copies of record `i`.
pub(crate) fn resample_weights(rng: &mut StreamRng, n: usize) -> Vec<u32> {
    let mut w = vec![0u32; n];
    for _ in 0..n {
        w[rng.random_range(0..n as u32) as usize] += 1;
    }
    w
}

/// Bootstraps several models at once. Each replicate draws `|records|`
/// records with replacement and every model is re-estimated on that same
/// draw, user statistics included.
pub fn bootstrap_many<T: Scalar>(
    input: &ModelInput<T>,
    specs: &[ModelSpec<T>],
    cfg: &BootstrapConfig,
) -> Vec<Result<BootstrapResult, StatsError>> {
    if input.is_empty() {
        return specs.iter().map(|_| Err(StatsError::Empty)).collect();
    }
    if cfg.n_resamples == 0 {
        return specs.iter().map(|_| Err(StatsError::NoResamples)).collect();
    }
    let per_replicate: Vec<Vec<Result<f64, String>>> = run_replicates(cfg.n_resamples, cfg.seed, |rng| {
        let w = resample_weights(rng, input.len());
        let ev = Evaluator::new(input, Some(&w));
        specs.iter().map(|s| ev.estimate(s).map(|sh| to_f64(&sh.ruling)).map_err(|e| e.to_string())).collect()
    });
    specs
        .iter()
        .enumerate()
        .map(|(k, spec)| {
            let mut first_error = None;
            let samples = per_replicate
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
        .collect()
}

pub fn bootstrap_share<T: Scalar>(
    input: &ModelInput<T>,
    spec: &ModelSpec<T>,
    cfg: &BootstrapConfig,
) -> Result<BootstrapResult, StatsError> {
    bootstrap_many(input, std::slice::from_ref(spec), cfg).pop().expect("one result per spec")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{AllegianceRecord, ModelId};
    use crate::Party;
    use chrono::{TimeZone, Utc};

    fn bernoulli_corpus(n: usize, p: f64, seed: u64) -> ModelInput<f64> {
        let mut rng = rng::seeded(seed);
        let d = Utc.with_ymd_and_hms(2021, 5, 2, 12, 0, 0).unwrap();
        let recs: Vec<_> = (0..n)
            .map(|i| {
                let party = if rng.random::<f64>() < p { Party::Morena } else { Party::Pan };
                AllegianceRecord::new(format!("{i}"), format!("u{i}"), party, 0.5, d, None).unwrap()
            })
            .collect();
        ModelInput::from_records(&recs)
    }

    #[test]
    fn identical_coalition_gives_zero_width() {
        let d = Utc.with_ymd_and_hms(2021, 5, 2, 12, 0, 0).unwrap();
        let recs: Vec<_> = (0..30)
            .map(|i| AllegianceRecord::new(format!("{i}"), format!("u{}", i % 4), Party::Pt, 0.9, d, None).unwrap())
            .collect();
        let input = ModelInput::from_records(&recs);
        for r in bootstrap_many(&input, &[ModelSpec::new(ModelId::Cvt), ModelSpec::new(ModelId::Alt)], &BootstrapConfig { n_resamples: 200, seed: 1 }) {
            let r = r.unwrap();
            assert!(r.defined().all(|v| v == 1.0));
            assert_eq!((r.q1, r.median, r.q3), (1.0, 1.0, 1.0));
        }
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let input = bernoulli_corpus(500, 0.44, 3);
        let cfg = BootstrapConfig { n_resamples: 100, seed: 42 };
        let a = bootstrap_share(&input, &ModelSpec::new(ModelId::Cvt), &cfg).unwrap();
        let b = bootstrap_share(&input, &ModelSpec::new(ModelId::Cvt), &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.samples.len(), 100);
        assert!(a.q1 <= a.median && a.median <= a.q3);
    }

    #[test]
    fn joint_and_single_bootstraps_agree() {
        let input = bernoulli_corpus(300, 0.5, 4);
        let cfg = BootstrapConfig { n_resamples: 50, seed: 5 };
        let specs = ModelSpec::<f64>::all();
        let joint = bootstrap_many(&input, &specs, &cfg);
        let single = bootstrap_share(&input, &specs[1], &cfg);
        assert_eq!(joint[1], single);
    }

    #[test]
    fn geo_models_on_non_geo_data_are_degenerate() {
        let input = bernoulli_corpus(50, 0.5, 4);
        let r = bootstrap_share(&input, &ModelSpec::new(ModelId::Gvt), &BootstrapConfig { n_resamples: 10, seed: 0 });
        assert!(matches!(r, Err(StatsError::Degenerate { undefined: 10, .. })));
        let empty = ModelInput::<f64>::from_records(&[]);
        assert_eq!(bootstrap_share(&empty, &ModelSpec::new(ModelId::Cvt), &BootstrapConfig::default()), Err(StatsError::Empty));
    }

    #[test]
    fn bernoulli_median_and_iqr_scaling() {
        let cfg = BootstrapConfig { n_resamples: 400, seed: 8 };
        let spec = ModelSpec::new(ModelId::Cvt);
        let widths: Vec<f64> = [100usize, 1_000, 10_000]
            .iter()
            .map(|&n| {
                let r = bootstrap_share(&bernoulli_corpus(n, 0.44, n as u64), &spec, &cfg).unwrap();
                if n == 10_000 {
                    assert!((r.median - 0.44).abs() < 0.015, "median {}", r.median);
                }
                r.q3 - r.q1
            })
            .collect();
        // IQR of a binomial proportion is about 1.349 sqrt(p(1-p)/n)
        for (w, n) in widths.iter().zip([100.0f64, 1_000.0, 10_000.0]) {
            let expected = 1.349 * (0.44f64 * 0.56 / n).sqrt();
            assert!((w / expected - 1.0).abs() < 0.35, "n={n}: {w} vs {expected}");
        }
        assert!(widths[0] > widths[1] && widths[1] > widths[2]);
    }
}
