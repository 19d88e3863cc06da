use serde::{Deserialize, Serialize};

use super::{AllegianceError, Label, LabeledExample, MultinomialNb};
use crate::scalar::Real;

/// Scores strictly above the threshold are classified positive.
pub const THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tn: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tp: u64,
}

impl Confusion {
    pub fn from_scores(scored: &[(Label, f64)], threshold: f64) -> Self {
        let mut c = Confusion::default();
        for &(label, s) in scored {
            match (label, s > threshold) {
                (Label::Positive, true) => c.tp += 1,
                (Label::Positive, false) => c.fn_ += 1,
                (Label::Negative, true) => c.fp += 1,
                (Label::Negative, false) => c.tn += 1,
            }
        }
        c
    }
}

/// F1 of one class from confusion counts; 0 when the class is never
/// predicted nor present.
pub fn f1_score(c: &Confusion, class: Label) -> f64 {
    let (hit, miss_a, miss_b) = match class {
        Label::Positive => (c.tp, c.fp, c.fn_),
        Label::Negative => (c.tn, c.fn_, c.fp),
    };
    let denom = 2 * hit + miss_a + miss_b;
    if denom == 0 {
        0.0
    } else {
        (2 * hit) as f64 / denom as f64
    }
}

/// ROC AUC from the Mann-Whitney rank statistic, ties sharing their average
/// rank.
pub fn roc_auc(scored: &[(Label, f64)]) -> Result<f64, AllegianceError> {
    let n_pos = scored.iter().filter(|(l, _)| *l == Label::Positive).count();
    let n_neg = scored.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(AllegianceError::UndefinedAuc);
    }
    let mut order: Vec<usize> = (0..scored.len()).collect();
    order.sort_by(|&a, &b| scored[a].1.total_cmp(&scored[b].1));
    let mut rank_sum_pos = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scored[order[j + 1]].1 == scored[order[i]].1 {
            j += 1;
        }
        // ranks are 1-based: positions i..=j share (i + j + 2) / 2
        let avg = (i + j + 2) as f64 / 2.0;
        let pos_in_tie = order[i..=j].iter().filter(|&&k| scored[k].0 == Label::Positive).count();
        rank_sum_pos += avg * pos_in_tie as f64;
        i = j + 1;
    }
    let u = rank_sum_pos - (n_pos * (n_pos + 1)) as f64 / 2.0;
    Ok(u / (n_pos as f64 * n_neg as f64))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierMetrics {
    pub n_test: usize,
    pub confusion: Confusion,
    pub f1_n: f64,
    pub f1_p: f64,
    pub roc_auc: f64,
}

impl ClassifierMetrics {
    pub fn from_scores(scored: &[(Label, f64)]) -> Result<Self, AllegianceError> {
        let roc_auc = roc_auc(scored)?;
        let confusion = Confusion::from_scores(scored, THRESHOLD);
        Ok(Self {
            n_test: scored.len(),
            f1_n: f1_score(&confusion, Label::Negative),
            f1_p: f1_score(&confusion, Label::Positive),
            confusion,
            roc_auc,
        })
    }
}

/// Scores the test set and summarizes it.
pub fn evaluate<F: Real>(m: &MultinomialNb<F>, test: &[LabeledExample]) -> Result<ClassifierMetrics, AllegianceError> {
    let scored: Vec<(Label, f64)> = test.iter().map(|e| (e.label, m.predict(&e.text).to_f64().unwrap_or(f64::NAN))).collect();
    ClassifierMetrics::from_scores(&scored)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::{Negative as N, Positive as P};

    /// Fraction of (positive, negative) pairs ordered correctly, ties half.
    fn pair_auc(scored: &[(Label, f64)]) -> f64 {
        let (mut wins, mut pairs) = (0.0, 0.0);
        for &(_, sp) in scored.iter().filter(|(l, _)| *l == P) {
            for &(_, sn) in scored.iter().filter(|(l, _)| *l == N) {
                pairs += 1.0;
                wins += if sp > sn { 1.0 } else if sp == sn { 0.5 } else { 0.0 };
            }
        }
        wins / pairs
    }

    #[test]
    fn perfect_classifier() {
        let s = [(P, 0.9), (P, 0.8), (N, 0.1), (N, 0.3)];
        let m = ClassifierMetrics::from_scores(&s).unwrap();
        assert_eq!((m.f1_n, m.f1_p, m.roc_auc), (1.0, 1.0, 1.0));
    }

    #[test]
    fn constant_predictor_is_chance() {
        let s = [(P, 0.5), (P, 0.5), (N, 0.5), (N, 0.5)];
        assert_eq!(roc_auc(&s).unwrap(), 0.5);
    }

    #[test]
    fn four_point_example() {
        let s = [(P, 0.9), (P, 0.7), (N, 0.6), (N, 0.2)];
        assert_eq!(pair_auc(&s), 1.0);
        let m = ClassifierMetrics::from_scores(&s).unwrap();
        assert_eq!(m.roc_auc, 1.0);
        // n:0.6 lies above the threshold: tp 2, fp 1, fn 0
        assert_eq!(m.confusion, Confusion { tn: 1, fp: 1, fn_: 0, tp: 2 });
        assert!((m.f1_p - 0.8).abs() < 1e-15);
        assert!((m.f1_n - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn single_class_auc_is_an_error() {
        assert!(matches!(roc_auc(&[(P, 0.3), (P, 0.4)]), Err(AllegianceError::UndefinedAuc)));
    }

    #[test]
    fn rank_statistic_matches_pair_counting_with_ties() {
        let s = [(P, 0.5), (N, 0.5), (P, 0.2), (N, 0.1), (N, 0.7), (P, 0.7), (P, 0.7)];
        assert!((roc_auc(&s).unwrap() - pair_auc(&s)).abs() < 1e-15);
    }
}
