use votecast::geo::{
    aggregate_users_by_state, population_2020, population_distribution, population_weighted_resample,
    representativeness_report, total_variation, GeoError, PanelConfig, Region, StateCode,
};
use votecast::models::{ModelId, ModelInput, ModelSpec};
use votecast::stats::{bootstrap_share, BootstrapConfig};
use votecast::synth::{generate_corpus, GeneratorConfig, StateDistribution};

#[test]
fn panels_follow_the_target_distribution() {
    let cfg = GeneratorConfig { n_users: 20_000, geo_probability: 0.5, seed: 11, ..Default::default() };
    let (records, _) = generate_corpus(&cfg).unwrap();
    let target = population_distribution(&population_2020()).unwrap();
    let spec = ModelSpec::new(ModelId::Alt);
    let panel = population_weighted_resample(&records, &target, &[spec], &PanelConfig { panel_size: 1000, repetitions: 200, seed: 3 }).unwrap();
    assert_eq!(panel.quotas.values().sum::<usize>(), 1000);
    assert!(total_variation(&panel.drawn().unwrap(), &target) < 0.02);
    assert!(panel.results[0].is_ok());
}

#[test]
fn matching_the_empirical_distribution_reproduces_the_plain_bootstrap() {
    let cfg = GeneratorConfig { n_users: 5_000, geo_probability: 1.0, seed: 12, ..Default::default() };
    let (records, _) = generate_corpus(&cfg).unwrap();
    let empirical = aggregate_users_by_state(&records).unwrap();
    let spec = ModelSpec::new(ModelId::Cvu);
    let panel = population_weighted_resample(&records, &empirical, std::slice::from_ref(&spec), &PanelConfig { panel_size: 1000, repetitions: 300, seed: 5 })
        .unwrap();
    let plain = bootstrap_share(&ModelInput::from_records(&records), &spec, &BootstrapConfig { n_resamples: 300, seed: 5 }).unwrap();
    let p = panel.results[0].as_ref().unwrap();
    assert!((p.median - plain.median).abs() < 0.01, "{} vs {}", p.median, plain.median);
}

#[test]
fn errors_and_redistribution() {
    let single = GeneratorConfig { n_users: 500, geo_probability: 1.0, state_distribution: StateDistribution::Single(StateCode::Jalisco), ..Default::default() };
    let (records, _) = generate_corpus(&single).unwrap();
    let target = population_distribution(&population_2020()).unwrap();
    let spec = [ModelSpec::new(ModelId::Cvt)];
    let r = population_weighted_resample(&records, &target, &spec, &PanelConfig { panel_size: 100, repetitions: 10, seed: 0 }).unwrap();
    assert_eq!(r.dropped_states.len(), 31);
    assert_eq!(r.quotas.get(&StateCode::Jalisco), Some(&100));
    let too_big = population_weighted_resample(&records, &target, &spec, &PanelConfig { panel_size: 10_000, repetitions: 1, seed: 0 });
    assert!(matches!(too_big, Err(GeoError::PanelTooLarge { .. })));
    let none = GeneratorConfig { geo_probability: 0.0, ..single };
    let (records, _) = generate_corpus(&none).unwrap();
    assert!(matches!(population_weighted_resample(&records, &target, &spec, &PanelConfig::default()), Err(GeoError::NoGeoUsers)));
}

#[test]
fn report_on_population_like_sample() {
    let cfg = GeneratorConfig { n_users: 30_000, geo_probability: 1.0, seed: 2, ..Default::default() };
    let (records, _) = generate_corpus(&cfg).unwrap();
    let twitter = aggregate_users_by_state(&records).unwrap();
    let report = representativeness_report(&population_2020(), &twitter).unwrap();
    assert!(report.per_state.population_twitter.r > 0.99);
    assert!(report.per_state.population_internet.is_none());
    assert_eq!(report.merged.population_twitter.n, 30);
    let (region, _) = report.max_residual_outside_gmc.unwrap();
    assert!(matches!(region, Region::State(s) if !s.is_greater_mexico_city()));
}
