//! n-gram graphs: grams linked by co-occurrence within a sliding window.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::text::{ngrams, Unit};
use crate::error::{Error, Result};
use crate::profile::EntityProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphMeasure {
    Containment,
    Value,
    NormalizedValue,
    Overall,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NGramGraph {
    pub unit: Unit,
    pub n: usize,
    nodes: BTreeSet<String>,
    // endpoints stored in ascending order
    edges: BTreeMap<(String, String), f64>,
}

impl NGramGraph {
    fn empty(unit: Unit, n: usize) -> Self {
        NGramGraph {
            unit,
            n,
            nodes: BTreeSet::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn nodes(&self) -> &BTreeSet<String> {
        &self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, a: &str, b: &str) -> f64 {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges
            .get(&(key.0.to_string(), key.1.to_string()))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.edges
            .iter()
            .map(|((a, b), w)| (a.as_str(), b.as_str(), *w))
    }

    /// Adds the graph of one value; edge weights accumulate.
    fn absorb(&mut self, grams: &[String]) {
        let window = self.n.saturating_sub(1).max(1);
        for (i, g) in grams.iter().enumerate() {
            self.nodes.insert(g.clone());
            for h in grams.iter().skip(i + 1).take(window) {
                if g == h {
                    continue;
                }
                let key = if g < h {
                    (g.clone(), h.clone())
                } else {
                    (h.clone(), g.clone())
                };
                *self.edges.entry(key).or_insert(0.0) += 1.0;
            }
        }
    }

    pub(crate) fn into_sorted_edges(self) -> Vec<((String, String), f64)> {
        self.edges.into_iter().collect()
    }
}

pub fn build_ngram_graph(profile: &EntityProfile, unit: Unit, n: usize) -> Result<NGramGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "n-gram order must be at least 1".into(),
        ));
    }
    Ok(graph_from_values(profile.all_values(), unit, n))
}

pub(crate) fn graph_from_values<'a>(
    values: impl Iterator<Item = &'a str>,
    unit: Unit,
    n: usize,
) -> NGramGraph {
    let mut g = NGramGraph::empty(unit, n);
    for v in values {
        g.absorb(&ngrams(v, unit, n));
    }
    g
}

pub fn graph_similarity(measure: GraphMeasure, gi: &NGramGraph, gj: &NGramGraph) -> Result<f64> {
    if gi.unit != gj.unit || gi.n != gj.n {
        return Err(Error::InvalidArgument(
            "n-gram graphs use different settings".into(),
        ));
    }
    let a: Vec<(&(String, String), f64)> = gi.edges.iter().map(|(k, w)| (k, *w)).collect();
    let b: Vec<(&(String, String), f64)> = gj.edges.iter().map(|(k, w)| (k, *w)).collect();
    Ok(sorted_graph_similarity(measure, &a, &b))
}

/// Graph similarity over edge lists sorted by key.
pub(crate) fn sorted_graph_similarity<K: Ord>(
    measure: GraphMeasure,
    a: &[(K, f64)],
    b: &[(K, f64)],
) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let (mut i, mut j) = (0, 0);
    let mut shared = 0usize;
    let mut ratio = 0.0;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let (x, y) = (a[i].1, b[j].1);
                shared += 1;
                ratio += x.min(y) / x.max(y);
                i += 1;
                j += 1;
            }
        }
    }
    let small = a.len().min(b.len()) as f64;
    let large = a.len().max(b.len()) as f64;
    let cos = shared as f64 / small;
    let vs = ratio / large;
    let ns = ratio / small;
    match measure {
        GraphMeasure::Containment => cos,
        GraphMeasure::Value => vs,
        GraphMeasure::NormalizedValue => ns,
        GraphMeasure::Overall => (cos + vs + ns) / 3.0,
    }
}
