//! Bootstrap, quartiles, correlation and residuals.

mod bootstrap;
mod correlation;
mod quantile;
mod residuals;

pub use bootstrap::{bootstrap_many, bootstrap_share, run_replicates, summarize, BootstrapConfig, BootstrapResult};
pub use correlation::{pearson_r, CorrelationReport};
pub use quantile::{boxplot_summary, quantile_sorted, BoxplotSummary};
pub use residuals::{residuals, Residuals};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum StatsError {
    #[error("no values to summarize")]
    Empty,
    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("correlation needs at least 2 points, got {0}")]
    TooShort(usize),
    #[error("correlation undefined: series `{0}` has zero variance")]
    ZeroVariance(String),
    #[error("degenerate bootstrap for {label}: estimate undefined in {undefined} of {total} resamples ({reason})")]
    Degenerate { label: String, undefined: usize, total: usize, reason: String },
    #[error("region sets differ: {0}")]
    MismatchedRegions(String),
    #[error("resample count must be positive")]
    NoResamples,
}

impl StatsError {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, StatsError::Degenerate { .. } | StatsError::Empty)
    }
}
