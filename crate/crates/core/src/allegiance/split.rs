use rand::seq::SliceRandom;

use super::{AllegianceError, Label, LabeledExample};
use crate::rng;

/// Stratified train/test split.
///
/// Each class contributes `round(fraction * N_c)` examples to training, clamped
/// to `[1, N_c - 1]` so both sides keep every class. Selected examples keep
/// their input order.
pub fn split_train_test(
    examples: &[LabeledExample],
    fraction: f64,
    seed: u64,
) -> Result<(Vec<LabeledExample>, Vec<LabeledExample>), AllegianceError> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(AllegianceError::InvalidFraction(fraction));
    }
    let mut rng = rng::seeded(seed);
    let mut in_train = vec![false; examples.len()];
    for label in [Label::Negative, Label::Positive] {
        let mut idx: Vec<usize> = (0..examples.len()).filter(|&i| examples[i].label == label).collect();
        if idx.len() < 2 {
            return Err(AllegianceError::TooFewExamples { label, count: idx.len() });
        }
        let n_train = ((fraction * idx.len() as f64).round() as usize).clamp(1, idx.len() - 1);
        idx.shuffle(&mut rng);
        for &i in &idx[..n_train] {
            in_train[i] = true;
        }
    }
    let (train, test): (Vec<_>, Vec<_>) = examples.iter().zip(&in_train).partition(|(_, t)| **t);
    Ok((train.into_iter().map(|(e, _)| e.clone()).collect(), test.into_iter().map(|(e, _)| e.clone()).collect()))
}
