use proptest::prelude::*;
use votecast::geo::{RegionDistribution, StateCode};
use votecast::stats::{boxplot_summary, pearson_r, residuals, StatsError};

#[test]
fn exact_linear_series_correlate_perfectly() {
    let x: Vec<f64> = (0..20).map(|i| i as f64 * 0.37 - 2.0).collect();
    let up: Vec<f64> = x.iter().map(|v| 3.0 * v + 1.0).collect();
    let down: Vec<f64> = x.iter().map(|v| -0.5 * v + 7.0).collect();
    assert!((pearson_r(&x, &up).unwrap().r - 1.0).abs() < 1e-12);
    assert!((pearson_r(&x, &down).unwrap().r + 1.0).abs() < 1e-12);
}

#[test]
fn degenerate_inputs() {
    assert_eq!(pearson_r(&[1.0, 2.0], &[1.0]).unwrap_err(), StatsError::LengthMismatch(2, 1));
    assert_eq!(pearson_r(&[1.0], &[1.0]).unwrap_err(), StatsError::TooShort(1));
    assert!(matches!(pearson_r(&[1.0, 1.0], &[1.0, 2.0]), Err(StatsError::ZeroVariance(_))));
    assert_eq!(boxplot_summary::<f64>(&[]).unwrap_err(), StatsError::Empty);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pearson_is_affine_invariant(
        xy in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 3..40),
        a in 0.1f64..10.0, b in -100f64..100.0, c in 0.1f64..10.0, d in -100f64..100.0,
    ) {
        let (x, y): (Vec<f64>, Vec<f64>) = xy.into_iter().unzip();
        if let Ok(base) = pearson_r(&x, &y) {
            let x2: Vec<f64> = x.iter().map(|v| a * v + b).collect();
            let y2: Vec<f64> = y.iter().map(|v| c * v + d).collect();
            let moved = pearson_r(&x2, &y2).unwrap();
            prop_assert!((base.r - moved.r).abs() < 1e-9);
            let flipped: Vec<f64> = y.iter().map(|v| -v).collect();
            prop_assert!((pearson_r(&x, &flipped).unwrap().r + base.r).abs() < 1e-12);
            prop_assert!(base.r.abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn residuals_sum_to_zero(a in prop::collection::vec(0.0f64..1e6, 32), b in prop::collection::vec(0.0f64..1e6, 32)) {
        let dist = |v: &[f64]| RegionDistribution::from_state_counts(StateCode::ALL.into_iter().zip(v.iter().map(|x| x + 1.0)));
        let r = residuals(&dist(&a).unwrap(), &dist(&b).unwrap()).unwrap();
        prop_assert!(r.by_region.values().sum::<f64>().abs() < 1e-9);
    }
}
