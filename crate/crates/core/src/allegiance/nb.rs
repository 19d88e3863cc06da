use std::ops::{Index, IndexMut};

use indexmap::IndexSet;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{tokenize, AllegianceError, Label, LabeledExample};
use crate::scalar::{real, Real};

/// Training hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NbParams {
    /// Additive (Laplace) smoothing.
    pub alpha: f64,
    /// Highest n-gram order fed to the vectorizer; 1 means unigrams only.
    pub ngram_max: usize,
}

impl Default for NbParams {
    fn default() -> Self {
        Self { alpha: 1.0, ngram_max: 1 }
    }
}

/// Token to column-index map; indices are dense and follow first occurrence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vocabulary {
    terms: IndexSet<String>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.terms.get_index_of(term)
    }

    pub fn term(&self, index: usize) -> Option<&str> {
        self.terms.get_index(index).map(String::as_str)
    }

    fn insert(&mut self, term: String) -> usize {
        self.terms.insert_full(term).0
    }
}

/// n-gram features of a token sequence, unigrams first.
pub(crate) fn features(tokens: &[String], ngram_max: usize) -> Vec<String> {
    let mut out: Vec<String> = tokens.to_vec();
    for n in 2..=ngram_max {
        out.extend(tokens.windows(n).map(|w| w.join(" ")));
    }
    out
}

/// A value per class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerClass<T> {
    pub n: T,
    pub p: T,
}

impl<T> Index<Label> for PerClass<T> {
    type Output = T;
    fn index(&self, l: Label) -> &T {
        match l {
            Label::Negative => &self.n,
            Label::Positive => &self.p,
        }
    }
}

impl<T> IndexMut<Label> for PerClass<T> {
    fn index_mut(&mut self, l: Label) -> &mut T {
        match l {
            Label::Negative => &mut self.n,
            Label::Positive => &mut self.p,
        }
    }
}

const ARTIFACT_FORMAT: &str = "votecast-multinomial-nb";
const ARTIFACT_VERSION: u32 = 1;

/// Two-class multinomial Naive Bayes over bag-of-n-gram counts.
///
/// Serialized as a self-describing JSON artifact; reloading it reproduces
/// every prediction bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultinomialNb<F> {
    format: String,
    version: u32,
    pub params: NbParams,
    pub vocabulary: Vocabulary,
    /// Training documents per class.
    pub class_count: PerClass<u64>,
    /// Token occurrences per class and column.
    pub feature_count: PerClass<Vec<u64>>,
    pub class_log_prior: PerClass<F>,
    /// `ln((count + alpha) / (class_total + alpha * |V|))`.
    pub feature_log_prob: PerClass<Vec<F>>,
}

/// Fits the classifier. Priors are class frequencies; token likelihoods use
/// additive smoothing over the training vocabulary.
pub fn train_nb<F: Real>(examples: &[LabeledExample], params: NbParams) -> Result<MultinomialNb<F>, AllegianceError> {
    if params.alpha.is_nan() || params.alpha <= 0.0 {
        return Err(AllegianceError::InvalidAlpha(params.alpha));
    }
    if params.ngram_max == 0 {
        return Err(AllegianceError::InvalidNgram);
    }
    let mut class_count = PerClass { n: 0u64, p: 0u64 };
    for e in examples {
        class_count[e.label] += 1;
    }
    if class_count.n == 0 || class_count.p == 0 {
        return Err(AllegianceError::SingleClass {
            negative: class_count.n as usize,
            positive: class_count.p as usize,
        });
    }

    let mut vocabulary = Vocabulary::default();
    let mut feature_count = PerClass { n: Vec::new(), p: Vec::new() };
    for e in examples {
        for f in features(&tokenize(&e.text), params.ngram_max) {
            let j = vocabulary.insert(f);
            if j == feature_count.n.len() {
                feature_count.n.push(0);
                feature_count.p.push(0);
            }
            feature_count[e.label][j] += 1;
        }
    }

    let total_docs: F = real((class_count.n + class_count.p) as f64);
    let alpha: F = real(params.alpha);
    let v: F = real(vocabulary.len() as f64);
    let log_probs = |counts: &[u64]| -> Vec<F> {
        let total: F = real(counts.iter().sum::<u64>() as f64);
        let denom = total + alpha * v;
        counts.iter().map(|&c| ((real::<F>(c as f64) + alpha) / denom).ln()).collect()
    };
    let class_log_prior = PerClass {
        n: (real::<F>(class_count.n as f64) / total_docs).ln(),
        p: (real::<F>(class_count.p as f64) / total_docs).ln(),
    };
    let feature_log_prob = PerClass { n: log_probs(&feature_count.n), p: log_probs(&feature_count.p) };

    Ok(MultinomialNb {
        format: ARTIFACT_FORMAT.to_string(),
        version: ARTIFACT_VERSION,
        params,
        vocabulary,
        class_count,
        feature_count,
        class_log_prior,
        feature_log_prob,
    })
}

impl<F: Real> MultinomialNb<F> {
    /// `ln P(p|x) - ln P(n|x)`. Features outside the vocabulary are skipped.
    pub fn log_odds(&self, text: &str) -> F {
        let mut d = self.class_log_prior.p - self.class_log_prior.n;
        for f in features(&tokenize(text), self.params.ngram_max) {
            if let Some(j) = self.vocabulary.index_of(&f) {
                d = d + (self.feature_log_prob.p[j] - self.feature_log_prob.n[j]);
            }
        }
        d
    }

    /// `(P(n|x), P(p|x))`.
    pub fn posterior(&self, text: &str) -> (F, F) {
        let d = self.log_odds(text);
        (logistic(-d), logistic(d))
    }

    /// Posterior probability of the positive class.
    pub fn predict(&self, text: &str) -> F {
        logistic(self.log_odds(text))
    }

    pub fn prior_positive(&self) -> F {
        self.class_log_prior.p.exp()
    }
}

impl<F: Real + Serialize + DeserializeOwned> MultinomialNb<F> {
    pub fn to_json(&self) -> Result<String, AllegianceError> {
        serde_json::to_string_pretty(self).map_err(|e| AllegianceError::Artifact(e.to_string()))
    }

    pub fn from_json(json: &str) -> Result<Self, AllegianceError> {
        let m: Self = serde_json::from_str(json).map_err(|e| AllegianceError::Artifact(e.to_string()))?;
        if m.format != ARTIFACT_FORMAT || m.version != ARTIFACT_VERSION {
            return Err(AllegianceError::Artifact(format!("unsupported artifact {} v{}", m.format, m.version)));
        }
        let v = m.vocabulary.len();
        if [m.feature_count.n.len(), m.feature_count.p.len(), m.feature_log_prob.n.len(), m.feature_log_prob.p.len()]
            .iter()
            .any(|&l| l != v)
        {
            return Err(AllegianceError::Artifact("table sizes disagree with the vocabulary".into()));
        }
        Ok(m)
    }
}

fn logistic<F: Real>(d: F) -> F {
    if d >= F::zero() {
        F::one() / (F::one() + (-d).exp())
    } else {
        let e = d.exp();
        e / (F::one() + e)
    }
}

/// Allegiance `A` of a text: the posterior probability of a positive
/// connotation.
pub fn predict_allegiance<F: Real>(m: &MultinomialNb<F>, text: &str) -> F {
    m.predict(text)
}
