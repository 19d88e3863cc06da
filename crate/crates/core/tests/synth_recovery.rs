use votecast::models::{model_alt, model_at, model_au, model_vt, model_vu, AltBounds, Scope};
use votecast::synth::{distortion_config, distortion_suite, generate_corpus, Distortion, GeneratorConfig, SynthError};
use votecast::Coalition;

#[test]
fn unanimous_electorate_gives_unit_shares() {
    let cfg = GeneratorConfig { n_users: 500, true_ruling_share: 1.0, cross_mention: 0.2, ..Default::default() };
    let (recs, truth) = generate_corpus(&cfg).unwrap();
    assert_eq!(truth.realized_share, Some(1.0));
    // Cross mentions are low-allegiance opposition tweets; the volume models
    // count them, so only the allegiance-aware models are unanimous here.
    let clean = GeneratorConfig { cross_mention: 0.0, ..cfg };
    let (clean_recs, _) = generate_corpus(&clean).unwrap();
    for scope in [Scope::Complete, Scope::Geo] {
        assert_eq!(model_vt(&clean_recs, scope).unwrap().ruling_share, 1.0);
        assert_eq!(model_vu(&clean_recs, scope).unwrap().ruling_share, 1.0);
        assert_eq!(model_at(&clean_recs, scope).unwrap().ruling_share, 1.0);
        assert_eq!(model_au(&clean_recs, scope).unwrap().ruling_share, 1.0);
    }
    assert_eq!(model_alt(&recs, AltBounds::default()).unwrap().ruling_share, 1.0);
}

#[test]
fn realized_share_obeys_the_law_of_large_numbers() {
    for (n, seed) in [(1_000usize, 1u64), (10_000, 2), (100_000, 3)] {
        let cfg = GeneratorConfig { n_users: n, seed, max_tweets_per_user: 1, geo_probability: 0.0, ..Default::default() };
        let (_, truth) = generate_corpus(&cfg).unwrap();
        let sigma = (0.44 * 0.56 / n as f64).sqrt();
        assert!((truth.realized_share.unwrap() - 0.44).abs() < 3.0 * sigma, "n = {n}");
    }
}

#[test]
fn realized_share_counts_supporters_only() {
    let cfg = GeneratorConfig { n_users: 2_000, noise_fraction: 0.3, ..Default::default() };
    let (_, truth) = generate_corpus(&cfg).unwrap();
    let voters: Vec<_> = truth.users.iter().filter_map(|u| u.support()).collect();
    let ruling = voters.iter().filter(|c| **c == Coalition::Ruling).count();
    assert_eq!(truth.realized_share, Some(ruling as f64 / voters.len() as f64));
    assert!(voters.len() < 1_600);
}

#[test]
fn variants_behave_as_designed() {
    let base = GeneratorConfig { n_users: 20_000, seed: 5, ..Default::default() };
    let suite = distortion_suite(&base).unwrap();
    let neg = &suite[0];
    assert_eq!(neg.variant, Distortion::NegativityDominant);
    let low = neg.records.iter().filter(|r| r.allegiance < 0.5).count();
    assert!(low * 2 > neg.records.len());
    let vt = model_vt(&neg.records, Scope::Complete).unwrap().ruling_share;
    let at = model_at(&neg.records, Scope::Complete).unwrap().ruling_share;
    // Opposition supporters outnumber ruling ones, so the ruling coalition
    // draws more of the negative mentions and AT moves below VT.
    assert!(at < vt - 0.03, "AT {at} VT {vt}");

    let skew = &suite[1];
    let geo_users: usize = skew.truth.geo_state_users.values().sum();
    let capital = skew.truth.geo_state_users[&votecast::geo::StateCode::MexicoCity];
    assert!((capital as f64 / geo_users as f64 - 0.204).abs() < 0.02);

    let hyper = &suite[2];
    let vt = model_vt(&hyper.records, Scope::Complete).unwrap().ruling_share;
    let vu = model_vu(&hyper.records, Scope::Complete).unwrap().ruling_share;
    assert!(vu - vt > 0.2, "VU {vu} VT {vt}");
}

#[test]
fn capital_skew_rejects_overfull_geo_probability() {
    let base = GeneratorConfig { geo_probability: 0.9, ..Default::default() };
    assert!(matches!(distortion_config(&base, Distortion::CapitalSkew), Err(SynthError::Infeasible(_))));
}
