//! Brute-force reference implementations shared by the integration and
//! acceptance tests. Nothing here calls into the library's estimators.

#![allow(dead_code)]

use std::collections::BTreeMap;

use chrono::{TimeZone, Utc};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use votecast::geo::StateCode;
use votecast::models::AllegianceRecord;
use votecast::rng::StreamRng;
use votecast::{Coalition, Party};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Random exact-allegiance corpus: up to `max_records` records over at most
/// `max_users` users, allegiances `k/den` for `den <= 12`.
pub fn random_exact_corpus(rng: &mut StreamRng, max_records: usize, max_users: usize) -> Vec<AllegianceRecord<BigRational>> {
    let n = rng.random_range(1..=max_records);
    let users = rng.random_range(1..=max_users);
    let day = Utc.with_ymd_and_hms(2021, 5, 10, 12, 0, 0).unwrap();
    (0..n)
        .map(|i| {
            let party = Party::ALL[rng.random_range(0..Party::ALL.len())];
            let den = rng.random_range(1..=12);
            let a = q(rng.random_range(0..=den), den);
            let region = rng.random_bool(0.6).then(|| StateCode::ALL[rng.random_range(0..32)]);
            AllegianceRecord::new(format!("t{i}"), format!("u{}", rng.random_range(0..users)), party, a, day, region).unwrap()
        })
        .collect()
}

fn in_scope<T>(recs: &[AllegianceRecord<T>], geo: bool) -> impl Iterator<Item = &AllegianceRecord<T>> {
    recs.iter().filter(move |r| !geo || r.region.is_some())
}

fn users(recs: &[AllegianceRecord<BigRational>], geo: bool) -> Vec<String> {
    let mut u: Vec<String> = in_scope(recs, geo).map(|r| r.user_id.clone()).collect();
    u.sort();
    u.dedup();
    u
}

pub fn oracle_vt(recs: &[AllegianceRecord<BigRational>], geo: bool) -> Option<BigRational> {
    let total = in_scope(recs, geo).count() as i64;
    let ruling = in_scope(recs, geo).filter(|r| r.coalition == Coalition::Ruling).count() as i64;
    (total > 0).then(|| q(ruling, total))
}

pub fn oracle_vu(recs: &[AllegianceRecord<BigRational>], geo: bool) -> Option<BigRational> {
    let (mut ruling, mut counted) = (0i64, 0i64);
    for u in users(recs, geo) {
        let mine: Vec<_> = in_scope(recs, geo).filter(|r| r.user_id == u).collect();
        let n0 = mine.iter().filter(|r| r.coalition == Coalition::Ruling).count();
        let n1 = mine.len() - n0;
        if n0 != n1 {
            counted += 1;
            ruling += i64::from(n0 > n1);
        }
    }
    (counted > 0).then(|| q(ruling, counted))
}

pub fn oracle_at(recs: &[AllegianceRecord<BigRational>], geo: bool) -> Option<BigRational> {
    let mut s = [BigRational::zero(), BigRational::zero()];
    for r in in_scope(recs, geo) {
        s[r.coalition as usize] += &r.allegiance;
    }
    let total = &s[0] + &s[1];
    (!total.is_zero()).then(|| &s[0] / total)
}

/// Per-user mean allegiance toward each coalition, by two passes.
pub fn oracle_means(recs: &[AllegianceRecord<BigRational>], geo: bool) -> BTreeMap<String, [Option<BigRational>; 2]> {
    users(recs, geo)
        .into_iter()
        .map(|u| {
            let mean = |c: Coalition| {
                let vals: Vec<&BigRational> =
                    in_scope(recs, geo).filter(|r| r.user_id == u && r.coalition == c).map(|r| &r.allegiance).collect();
                if vals.is_empty() {
                    return None;
                }
                let sum = vals.iter().fold(BigRational::zero(), |a, b| a + *b);
                Some(sum / BigRational::from_integer(BigInt::from(vals.len())))
            };
            let m = [mean(Coalition::Ruling), mean(Coalition::Opposition)];
            (u, m)
        })
        .collect()
}

pub fn oracle_au(recs: &[AllegianceRecord<BigRational>], geo: bool) -> Option<BigRational> {
    let mut t = [BigRational::zero(), BigRational::zero()];
    for m in oracle_means(recs, geo).values() {
        for c in 0..2 {
            if let Some(v) = &m[c] {
                t[c] += v;
            }
        }
    }
    let total = &t[0] + &t[1];
    (!total.is_zero()).then(|| &t[0] / total)
}

/// ALT classification per user: `Some(coalition)` or `None` when excluded.
pub fn oracle_alt_votes(
    recs: &[AllegianceRecord<BigRational>],
    lo: &BigRational,
    up: &BigRational,
) -> BTreeMap<String, Option<Coalition>> {
    oracle_means(recs, false)
        .into_iter()
        .map(|(u, m)| {
            let positive = |c: usize| m[c].as_ref().is_some_and(|v| lo <= v && v <= up);
            let below = |c: usize| m[c].as_ref().is_none_or(|v| v < lo);
            let vote = if positive(0) && below(1) {
                Some(Coalition::Ruling)
            } else if positive(1) && below(0) {
                Some(Coalition::Opposition)
            } else {
                None
            };
            (u, vote)
        })
        .collect()
}

pub fn oracle_alt(recs: &[AllegianceRecord<BigRational>], lo: &BigRational, up: &BigRational) -> Option<(BigRational, u64)> {
    let votes = oracle_alt_votes(recs, lo, up);
    let counted = votes.values().filter(|v| v.is_some()).count() as i64;
    let ruling = votes.values().filter(|v| **v == Some(Coalition::Ruling)).count() as i64;
    (counted > 0).then(|| (q(ruling, counted), counted as u64))
}

/// Multinomial Naive Bayes posterior of the positive class, evaluated as a
/// literal product of smoothed likelihoods. Words not seen in training are
/// skipped.
pub fn oracle_nb_posterior(train: &[(Vec<String>, bool)], alpha: f64, doc: &[String]) -> f64 {
    let mut vocab: Vec<&String> = train.iter().flat_map(|(d, _)| d.iter()).collect();
    vocab.sort();
    vocab.dedup();
    let v = vocab.len() as f64;
    let n = train.len() as f64;
    let score = |label: bool| {
        let docs: Vec<&Vec<String>> = train.iter().filter(|(_, l)| *l == label).map(|(d, _)| d).collect();
        let total: f64 = docs.iter().map(|d| d.len() as f64).sum();
        let mut p = docs.len() as f64 / n;
        for w in doc {
            if vocab.contains(&w) {
                let count = docs.iter().map(|d| d.iter().filter(|x| *x == w).count()).sum::<usize>() as f64;
                p *= (count + alpha) / (total + alpha * v);
            }
        }
        p
    };
    let (pp, pn) = (score(true), score(false));
    pp / (pp + pn)
}

/// ROC AUC by counting all (positive, negative) pairs; ties count one half.
pub fn oracle_auc(scored: &[(bool, f64)]) -> Option<f64> {
    let pos: Vec<f64> = scored.iter().filter(|s| s.0).map(|s| s.1).collect();
    let neg: Vec<f64> = scored.iter().filter(|s| !s.0).map(|s| s.1).collect();
    if pos.is_empty() || neg.is_empty() {
        return None;
    }
    let mut wins = 0.0;
    for p in &pos {
        for n in &neg {
            wins += if p > n { 1.0 } else if p == n { 0.5 } else { 0.0 };
        }
    }
    Some(wins / (pos.len() * neg.len()) as f64)
}

pub fn one() -> BigRational {
    BigRational::one()
}
