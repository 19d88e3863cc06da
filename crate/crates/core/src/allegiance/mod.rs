//! Per-tweet allegiance scoring with a multinomial Naive Bayes classifier.

mod data;
mod metrics;
mod nb;
mod score;
mod split;
mod tokenize;

pub use data::{read_labeled_csv, Label, LabeledExample};
pub use metrics::{evaluate, f1_score, roc_auc, ClassifierMetrics, Confusion, THRESHOLD};
pub use nb::{predict_allegiance, train_nb, MultinomialNb, NbParams, Vocabulary};
pub use score::{PartyGroup, Scorer};
pub use split::split_train_test;
pub use tokenize::tokenize;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AllegianceError {
    #[error("training data must contain both classes (got {negative} n, {positive} p)")]
    SingleClass { negative: usize, positive: usize },
    #[error("smoothing parameter must be positive, got {0}")]
    InvalidAlpha(f64),
    #[error("n-gram order must be at least 1")]
    InvalidNgram,
    #[error("split fraction must lie strictly between 0 and 1, got {0}")]
    InvalidFraction(f64),
    #[error("class {label} has {count} examples; at least 2 are needed to split")]
    TooFewExamples { label: Label, count: usize },
    #[error("ROC AUC is undefined on a test set with a single class")]
    UndefinedAuc,
    #[error("labeled data row {row}: {reason}")]
    BadRow { row: usize, reason: String },
    #[error("no classifier for party {0}")]
    MissingModel(crate::Party),
    #[error("model artifact: {0}")]
    Artifact(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
