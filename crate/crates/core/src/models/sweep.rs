use serde::{Deserialize, Serialize};

use super::{estimate, AltBounds, ModelError, ModelInput, ModelSpec};
use crate::scalar::{constant, to_f64};
use crate::stats::{bootstrap_many, BootstrapConfig};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum CellStatus {
    Ok,
    /// `x_low > x_upp`.
    Invalid,
    /// Point estimate or bootstrap undefined.
    Undefined(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub x_low: f64,
    pub x_upp: f64,
    pub status: CellStatus,
    pub share: Option<f64>,
    pub median: Option<f64>,
    pub q1: Option<f64>,
    pub q3: Option<f64>,
    pub precision_pp: Option<f64>,
    /// Users counted as voters by the point estimate.
    pub users: Option<u64>,
}

impl SweepCell {
    fn empty(x_low: f64, x_upp: f64, status: CellStatus) -> Self {
        Self { x_low, x_upp, status, share: None, median: None, q1: None, q3: None, precision_pp: None, users: None }
    }
}

/// ALT evaluated over a grid of bounds; `cells` is `x_low`-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub x_lows: Vec<f64>,
    pub x_upps: Vec<f64>,
    pub n_resamples: usize,
    pub seed: u64,
    pub cells: Vec<SweepCell>,
}

impl SweepGrid {
    pub fn cell(&self, i_low: usize, j_upp: usize) -> &SweepCell {
        &self.cells[i_low * self.x_upps.len() + j_upp]
    }

    /// Valid cell with the narrowest interquartile range.
    pub fn most_precise(&self) -> Option<&SweepCell> {
        self.cells
            .iter()
            .filter(|c| c.status == CellStatus::Ok)
            .min_by(|a, b| a.precision_pp.unwrap_or(f64::INFINITY).total_cmp(&b.precision_pp.unwrap_or(f64::INFINITY)))
    }
}

/// `start, start + step, ...` up to `end` inclusive (with a small tolerance),
/// computed by index to avoid drift.
pub fn grid(start: f64, end: f64, step: f64) -> Vec<f64> {
    if step.is_nan() || step <= 0.0 || end < start {
        return Vec::new();
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}

/// Evaluates ALT at every `(x_low, x_upp)` pair, bootstrapping all valid
/// cells on shared resamples.
pub fn alt_grid_sweep<T: Scalar>(
    input: &ModelInput<T>,
    x_lows: &[f64],
    x_upps: &[f64],
    cfg: &BootstrapConfig,
) -> Result<SweepGrid, ModelError> {
    if x_lows.is_empty() || x_upps.is_empty() {
        return Err(ModelError::EmptyGrid);
    }
    let mut cells = Vec::with_capacity(x_lows.len() * x_upps.len());
    let mut specs = Vec::new();
    let mut spec_cell = Vec::new();
    for &lo in x_lows {
        for &up in x_upps {
            if lo > up {
                cells.push(SweepCell::empty(lo, up, CellStatus::Invalid));
                continue;
            }
            let spec = ModelSpec::alt(AltBounds::<T>::new(constant(lo), constant(up))?);
            let mut cell = SweepCell::empty(lo, up, CellStatus::Ok);
            match estimate(&spec, input, None) {
                Ok(s) => {
                    cell.share = Some(to_f64(&s.ruling));
                    cell.users = Some(s.users);
                    spec_cell.push(cells.len());
                    specs.push(spec);
                }
                Err(e) => cell.status = CellStatus::Undefined(e.to_string()),
            }
            cells.push(cell);
        }
    }
    for (k, result) in bootstrap_many(input, &specs, cfg).into_iter().enumerate() {
        let cell = &mut cells[spec_cell[k]];
        match result {
            Ok(b) => {
                cell.median = Some(b.median);
                cell.q1 = Some(b.q1);
                cell.q3 = Some(b.q3);
                cell.precision_pp = Some(b.precision_pp());
            }
            Err(e) => cell.status = CellStatus::Undefined(e.to_string()),
        }
    }
    Ok(SweepGrid { x_lows: x_lows.to_vec(), x_upps: x_upps.to_vec(), n_resamples: cfg.n_resamples, seed: cfg.seed, cells })
}
