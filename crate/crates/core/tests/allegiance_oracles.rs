mod common;

use common::{oracle_auc, oracle_nb_posterior};
use rand::Rng;
use votecast::allegiance::{
    evaluate, f1_score, predict_allegiance, roc_auc, split_train_test, train_nb, Confusion, Label, LabeledExample,
    NbParams, THRESHOLD,
};
use votecast::rng;

fn random_doc(rng: &mut votecast::rng::StreamRng, vocab: usize, max_len: usize) -> Vec<String> {
    (0..rng.random_range(0..=max_len)).map(|_| format!("w{}", rng.random_range(0..vocab))).collect()
}

#[test]
fn naive_bayes_matches_brute_force_bayes() {
    let mut rng = rng::seeded(1);
    for case in 0..200 {
        let vocab = rng.random_range(1..=10);
        let n_docs = rng.random_range(2..=20);
        let alpha = [0.5, 1.0, 2.0][case % 3];
        let mut train: Vec<(Vec<String>, bool)> =
            (0..n_docs).map(|i| (random_doc(&mut rng, vocab, 6), i % 2 == 0 || rng.random_bool(0.5))).collect();
        train[1].1 = false;
        let examples: Vec<LabeledExample> = train
            .iter()
            .map(|(d, l)| LabeledExample::new(d.join(" "), if *l { Label::Positive } else { Label::Negative }))
            .collect();
        let model = train_nb::<f64>(&examples, NbParams { alpha, ngram_max: 1 }).unwrap();
        for _ in 0..5 {
            let doc = random_doc(&mut rng, vocab + 2, 8);
            let want = oracle_nb_posterior(&train, alpha, &doc);
            let got = predict_allegiance(&model, &doc.join(" "));
            assert!((got - want).abs() < 1e-12, "case {case}: {got} vs {want}");
        }
    }
}

#[test]
fn empty_text_scores_the_prior() {
    let ex = vec![
        LabeledExample::new("bien", Label::Positive),
        LabeledExample::new("bien bien", Label::Positive),
        LabeledExample::new("mal", Label::Negative),
    ];
    let m = train_nb::<f64>(&ex, NbParams::default()).unwrap();
    assert!((predict_allegiance(&m, "") - 2.0 / 3.0).abs() < 1e-15);
    assert!((predict_allegiance(&m, "palabras nuevas") - m.prior_positive()).abs() < 1e-15);
}

#[test]
fn auc_matches_pair_counting() {
    let mut rng = rng::seeded(3);
    for n in 2..=50 {
        for _ in 0..4 {
            let mut scored: Vec<(Label, f64)> = (0..n)
                .map(|_| {
                    let l = if rng.random_bool(0.5) { Label::Positive } else { Label::Negative };
                    (l, rng.random_range(0..6) as f64 / 5.0)
                })
                .collect();
            scored[0].0 = Label::Positive;
            scored[1].0 = Label::Negative;
            let plain: Vec<(bool, f64)> = scored.iter().map(|(l, s)| (*l == Label::Positive, *s)).collect();
            let want = oracle_auc(&plain).unwrap();
            assert!((roc_auc(&scored).unwrap() - want).abs() < 1e-12);
        }
    }
}

#[test]
fn f1_from_confusion() {
    let c = Confusion { tn: 5, fp: 1, fn_: 2, tp: 4 };
    assert!((f1_score(&c, Label::Positive) - 8.0 / 11.0).abs() < 1e-15);
    assert!((f1_score(&c, Label::Negative) - 10.0 / 13.0).abs() < 1e-15);
    assert_eq!(Confusion::from_scores(&[(Label::Positive, THRESHOLD)], THRESHOLD).fn_, 1);
}

#[test]
fn trains_on_generated_vocabulary() {
    let ex = votecast::synth::generate_labeled(600, 4, &Default::default());
    let (train, test) = split_train_test(&ex, 0.7, 4).unwrap();
    let m = train_nb::<f64>(&train, NbParams::default()).unwrap();
    let metrics = evaluate(&m, &test).unwrap();
    assert!(metrics.roc_auc > 0.9, "{metrics:?}");
    let json = m.to_json().unwrap();
    assert_eq!(json, votecast::allegiance::MultinomialNb::<f64>::from_json(&json).unwrap().to_json().unwrap());
}
