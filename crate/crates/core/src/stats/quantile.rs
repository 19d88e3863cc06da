use serde::{Deserialize, Serialize};

use super::StatsError;
use crate::scalar::{real, Real};

/// Linear interpolation between order statistics (the "type 7" rule):
/// with `h = (n - 1) p`, the quantile is `x[floor h] + (h - floor h) (x[floor h + 1] - x[floor h])`.
pub fn quantile_sorted<F: Real>(sorted: &[F], p: f64) -> F {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + real::<F>(h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxplotSummary<F> {
    pub median: F,
    pub q1: F,
    pub q3: F,
}

pub fn boxplot_summary<F: Real>(values: &[F]) -> Result<BoxplotSummary<F>, StatsError> {
    if values.is_empty() {
        return Err(StatsError::Empty);
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(BoxplotSummary { median: quantile_sorted(&v, 0.5), q1: quantile_sorted(&v, 0.25), q3: quantile_sorted(&v, 0.75) })
}
