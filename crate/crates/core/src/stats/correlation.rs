use serde::{Deserialize, Serialize};

use super::StatsError;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport<F> {
    pub r: F,
    pub n: usize,
    pub x_label: String,
    pub y_label: String,
}

impl<F> CorrelationReport<F> {
    pub fn labeled(mut self, x: &str, y: &str) -> Self {
        self.x_label = x.to_string();
        self.y_label = y.to_string();
        self
    }
}

/// Pearson product-moment correlation, computed from mean-centered sums.
pub fn pearson_r<F: Real>(x: &[F], y: &[F]) -> Result<CorrelationReport<F>, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    if n < 2 {
        return Err(StatsError::TooShort(n));
    }
    let nf = F::from_usize(n).expect("length fits");
    let mean = |v: &[F]| v.iter().fold(F::zero(), |a, &b| a + b) / nf;
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (F::zero(), F::zero(), F::zero());
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy = sxy + dx * dy;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
    }
    if sxx == F::zero() {
        return Err(StatsError::ZeroVariance("x".into()));
    }
    if syy == F::zero() {
        return Err(StatsError::ZeroVariance("y".into()));
    }
    let r = (sxy / (sxx.sqrt() * syy.sqrt())).max(-F::one()).min(F::one());
    Ok(CorrelationReport { r, n, x_label: "x".into(), y_label: "y".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn perfect_linear_relations() {
        let x: Vec<f64> = (0..20).map(|i| i as f64 * 0.37 - 2.0).collect();
        let up: Vec<f64> = x.iter().map(|v| 2.0 * v + 3.0).collect();
        let down: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson_r(&x, &up).unwrap().r - 1.0).abs() < 1e-12);
        assert!((pearson_r(&x, &down).unwrap().r + 1.0).abs() < 1e-12);
    }

    #[test]
    fn error_cases() {
        assert_eq!(pearson_r(&[1.0, 1.0], &[1.0, 2.0]), Err(StatsError::ZeroVariance("x".into())));
        assert_eq!(pearson_r(&[1.0], &[1.0]), Err(StatsError::TooShort(1)));
        assert_eq!(pearson_r(&[1.0, 2.0], &[1.0]), Err(StatsError::LengthMismatch(2, 1)));
    }

    proptest! {
        #[test]
        fn affine_invariance_and_sign_flip(
            pts in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..40),
            a in 0.01f64..50.0,
            b in -100.0f64..100.0,
        ) {
            let (x, y): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
            if let Ok(base) = pearson_r(&x, &y) {
                let xs: Vec<f64> = x.iter().map(|v| a * v + b).collect();
                let neg: Vec<f64> = y.iter().map(|v| -v).collect();
                prop_assert!((pearson_r(&xs, &y).unwrap().r - base.r).abs() < 1e-12);
                prop_assert_eq!(pearson_r(&x, &neg).unwrap().r, -base.r);
                prop_assert!(base.r.abs() <= 1.0);
            }
        }
    }
}
