//! Bag-of-n-grams models with TF or TF-IDF weights.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::text::{ngrams, Unit};
use crate::error::{Error, Result};
use crate::profile::EntityProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Tf,
    TfIdf,
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tf" => Ok(Scheme::Tf),
            "tf-idf" | "tfidf" => Ok(Scheme::TfIdf),
            _ => Err(Error::InvalidArgument(format!(
                "unknown weighting scheme `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BagMeasure {
    Arcs,
    Cosine,
    Jaccard,
    GeneralizedJaccard,
}

/// Document frequencies of n-grams over one collection.
#[derive(Debug, Clone, Default)]
pub struct CorpusStats {
    doc_count: usize,
    df: HashMap<String, usize>,
}

impl CorpusStats {
    pub fn build<'a>(
        profiles: impl IntoIterator<Item = &'a EntityProfile>,
        unit: Unit,
        n: usize,
    ) -> Self {
        let docs: Vec<Vec<String>> = profiles
            .into_iter()
            .map(|p| profile_grams(p.all_values(), unit, n))
            .collect();
        Self::from_documents(&docs)
    }

    pub fn from_documents<D: AsRef<[S]>, S: AsRef<str>>(docs: &[D]) -> Self {
        let mut df: HashMap<String, usize> = HashMap::new();
        for doc in docs {
            let mut seen: Vec<&str> = doc.as_ref().iter().map(AsRef::as_ref).collect();
            seen.sort_unstable();
            seen.dedup();
            for g in seen {
                *df.entry(g.to_string()).or_insert(0) += 1;
            }
        }
        CorpusStats {
            doc_count: docs.len(),
            df,
        }
    }

    pub fn doc_count(&self) -> usize {
        self.doc_count
    }

    pub fn df(&self, gram: &str) -> usize {
        self.df.get(gram).copied().unwrap_or(0)
    }

    pub fn idf(&self, gram: &str) -> f64 {
        idf(self.doc_count, self.df(gram))
    }
}

pub(crate) fn idf(doc_count: usize, df: usize) -> f64 {
    (doc_count as f64 / (df as f64 + 1.0)).ln()
}

/// Grams of every value, concatenated. Grams never span two values.
pub(crate) fn profile_grams<'a>(
    values: impl Iterator<Item = &'a str>,
    unit: Unit,
    n: usize,
) -> Vec<String> {
    values.flat_map(|v| ngrams(v, unit, n)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BagModel {
    pub unit: Unit,
    pub n: usize,
    pub scheme: Scheme,
    weights: Vec<(String, f64)>,
}

impl BagModel {
    pub fn weight(&self, gram: &str) -> f64 {
        self.weights
            .binary_search_by(|(g, _)| g.as_str().cmp(gram))
            .map_or(0.0, |i| self.weights[i].1)
    }

    /// Non-zero weights in gram order.
    pub fn weights(&self) -> &[(String, f64)] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

pub fn build_bag_model(
    profile: &EntityProfile,
    unit: Unit,
    n: usize,
    scheme: Scheme,
    stats: &CorpusStats,
) -> Result<BagModel> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "n-gram order must be at least 1".into(),
        ));
    }
    let grams = profile_grams(profile.all_values(), unit, n);
    let weights = term_weights(&grams, |g| match scheme {
        Scheme::Tf => 1.0,
        Scheme::TfIdf => stats.idf(g),
    });
    Ok(BagModel {
        unit,
        n,
        scheme,
        weights,
    })
}

/// `f / N` times a per-gram factor, zero entries dropped, sorted by gram.
pub(crate) fn term_weights(grams: &[String], factor: impl Fn(&str) -> f64) -> Vec<(String, f64)> {
    let total = grams.len() as f64;
    let mut freq: HashMap<&str, usize> = HashMap::new();
    for g in grams {
        *freq.entry(g).or_insert(0) += 1;
    }
    let mut out: Vec<(String, f64)> = freq
        .into_iter()
        .map(|(g, f)| (g.to_string(), f as f64 / total * factor(g)))
        .filter(|(_, w)| *w != 0.0)
        .collect();
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn bag_similarity(
    measure: BagMeasure,
    bm1: &BagModel,
    bm2: &BagModel,
    stats1: &CorpusStats,
    stats2: &CorpusStats,
) -> Result<f64> {
    if bm1.unit != bm2.unit || bm1.n != bm2.n {
        return Err(Error::InvalidArgument(
            "bag models use different n-gram settings".into(),
        ));
    }
    Ok(sorted_similarity(
        measure,
        &bm1.weights,
        &bm2.weights,
        |g| (stats1.df(g), stats2.df(g)),
    ))
}

/// Similarity of two sparse vectors sorted by key. `df` yields the document
/// frequency of a shared key in each collection.
pub(crate) fn sorted_similarity<K: Ord>(
    measure: BagMeasure,
    a: &[(K, f64)],
    b: &[(K, f64)],
    df: impl Fn(&K) -> (usize, usize),
) -> f64 {
    let (mut i, mut j) = (0, 0);
    let mut shared = 0usize;
    let mut dot = 0.0;
    let mut arcs = 0.0;
    let mut lo = 0.0;
    let mut hi = 0.0;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                hi += a[i].1.max(0.0);
                lo += a[i].1.min(0.0);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                hi += b[j].1.max(0.0);
                lo += b[j].1.min(0.0);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let (x, y) = (a[i].1, b[j].1);
                shared += 1;
                dot += x * y;
                lo += x.min(y);
                hi += x.max(y);
                if measure == BagMeasure::Arcs {
                    let (d1, d2) = df(&a[i].0);
                    arcs += std::f64::consts::LN_2 / ((d1 * d2).max(2) as f64).ln();
                }
                i += 1;
                j += 1;
            }
        }
    }
    for (_, w) in a[i..].iter().chain(&b[j..]) {
        hi += w.max(0.0);
        lo += w.min(0.0);
    }
    if shared == 0 {
        return 0.0;
    }
    match measure {
        BagMeasure::Arcs => arcs,
        BagMeasure::Cosine => {
            let na = a.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
            let nb = b.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
            if na == 0.0 || nb == 0.0 {
                0.0
            } else {
                dot / (na * nb)
            }
        }
        BagMeasure::Jaccard => shared as f64 / (a.len() + b.len() - shared) as f64,
        BagMeasure::GeneralizedJaccard => {
            if hi == 0.0 {
                0.0
            } else {
                lo / hi
            }
        }
    }
}
