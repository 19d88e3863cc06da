mod common;

use common::*;
use num_rational::BigRational;
use rand::Rng;
use votecast::models::{
    estimate, model_alt, model_at, model_au, model_vt, model_vu, user_mean_allegiance, AltBounds, ModelId, ModelInput,
    ModelSpec, Scope,
};
use votecast::rng;

type Oracle = fn(&[votecast::ExactRecord], bool) -> Option<BigRational>;

#[test]
fn nine_models_agree_exactly_with_enumeration() {
    let mut rng = rng::seeded(2021);
    for case in 0..100 {
        let recs = random_exact_corpus(&mut rng, 100, 15);
        for scope in [Scope::Complete, Scope::Geo] {
            let geo = scope == Scope::Geo;
            let pairs: [(Oracle, _); 4] = [
                (oracle_vt, model_vt(&recs, scope)),
                (oracle_vu, model_vu(&recs, scope)),
                (oracle_at, model_at(&recs, scope)),
                (oracle_au, model_au(&recs, scope)),
            ];
            for (k, (oracle, got)) in pairs.into_iter().enumerate() {
                match (oracle(&recs, geo), got) {
                    (Some(want), Ok(e)) => assert_eq!(e.ruling_share, want, "case {case} model {k} {scope:?}"),
                    (None, Err(_)) => {}
                    (want, got) => panic!("case {case} model {k} {scope:?}: oracle {want:?}, library {got:?}"),
                }
            }
        }
        let den = 10;
        let lo_n = rng.random_range(0..=den);
        let up_n = rng.random_range(lo_n..=den);
        let (lo, up) = (q(lo_n, den), q(up_n, den));
        let got = model_alt(&recs, AltBounds::new(lo.clone(), up.clone()).unwrap());
        match (oracle_alt(&recs, &lo, &up), got) {
            (Some((share, users)), Ok(e)) => {
                assert_eq!(e.ruling_share, share, "case {case} ALT");
                assert_eq!(e.users, users, "case {case} ALT users");
            }
            (None, Err(_)) => {}
            (want, got) => panic!("case {case} ALT: oracle {want:?}, library {got:?}"),
        }
    }
}

#[test]
fn user_means_match_two_pass_oracle() {
    let mut rng = rng::seeded(7);
    for _ in 0..50 {
        let recs = random_exact_corpus(&mut rng, 60, 8);
        let oracle = oracle_means(&recs, false);
        let got = user_mean_allegiance(&recs);
        assert_eq!(got.len(), oracle.len());
        for u in got {
            let m = &oracle[&u.user_id];
            assert_eq!(u.mean_ruling, m[0]);
            assert_eq!(u.mean_opposition, m[1]);
        }
    }
}

#[test]
fn user_means_in_f64_within_tolerance() {
    let mut rng = rng::seeded(8);
    for _ in 0..50 {
        let recs = random_exact_corpus(&mut rng, 60, 8);
        let float: Vec<votecast::Record> = recs.iter().map(|r| r.map_allegiance(votecast::scalar::to_f64)).collect();
        let oracle = oracle_means(&recs, false);
        for u in user_mean_allegiance(&float) {
            let m = &oracle[&u.user_id];
            for (got, want) in [(u.mean_ruling, &m[0]), (u.mean_opposition, &m[1])] {
                match (got, want) {
                    (Some(g), Some(w)) => assert!((g - votecast::scalar::to_f64(w)).abs() < 1e-12),
                    (None, None) => {}
                    other => panic!("{other:?}"),
                }
            }
        }
    }
}

#[test]
fn one_cell_sweep_matches_default_alt() {
    let mut rng = rng::seeded(9);
    let recs = random_exact_corpus(&mut rng, 100, 10);
    let float: Vec<votecast::Record> = recs.iter().map(|r| r.map_allegiance(votecast::scalar::to_f64)).collect();
    let input = ModelInput::from_records(&float);
    let grid = votecast::models::alt_grid_sweep(&input, &[0.6], &[1.0], &votecast::stats::BootstrapConfig { n_resamples: 20, seed: 1 }).unwrap();
    let direct = estimate(&ModelSpec::new(ModelId::Alt), &input, None);
    match direct {
        Ok(s) => assert_eq!(grid.cell(0, 0).share, Some(s.ruling)),
        Err(_) => assert_eq!(grid.cell(0, 0).share, None),
    }
}

#[test]
fn spec_examples() {
    use chrono::{TimeZone, Utc};
    use votecast::Party;
    let d = Utc.with_ymd_and_hms(2021, 5, 3, 0, 0, 0).unwrap();
    let r = |i: usize, u: &str, p: Party, a: f64| votecast::Record::new(format!("t{i}"), u, p, a, d, None).unwrap();

    let recs = vec![r(0, "a", Party::Morena, 0.5), r(1, "b", Party::Pt, 0.5), r(2, "c", Party::Pvem, 0.5), r(3, "d", Party::Pan, 0.5)];
    assert_eq!(model_vt(&recs, Scope::Complete).unwrap().ruling_share, 0.75);

    let one_user = vec![r(0, "a", Party::Morena, 0.7)];
    let e = model_alt(&one_user, AltBounds::default()).unwrap();
    assert_eq!((e.ruling_share, e.users), (1.0, 1));

    let both = vec![r(0, "a", Party::Morena, 0.8), r(1, "a", Party::Pan, 0.9)];
    assert!(model_alt(&both, AltBounds::default()).is_err());

    let f = |x: &votecast::Estimate| x.ruling_share + x.opposition_share();
    assert_eq!(f(&model_vt(&recs, Scope::Complete).unwrap()), 1.0);
}
