//! Similarities between word multisets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::edit::smith_waterman;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenMeasure {
    Cosine,
    Euclidean,
    Block,
    Overlap,
    Dice,
    SimonWhite,
    Jaccard,
    GeneralizedJaccard,
    MongeElkan,
}

impl TokenMeasure {
    pub const ALL: [TokenMeasure; 9] = [
        TokenMeasure::Cosine,
        TokenMeasure::Euclidean,
        TokenMeasure::Block,
        TokenMeasure::Overlap,
        TokenMeasure::Dice,
        TokenMeasure::SimonWhite,
        TokenMeasure::Jaccard,
        TokenMeasure::GeneralizedJaccard,
        TokenMeasure::MongeElkan,
    ];

    pub fn is_symmetric(self) -> bool {
        !matches!(self, TokenMeasure::MongeElkan | TokenMeasure::Overlap)
    }
}

fn counts<S: AsRef<str>>(words: &[S]) -> BTreeMap<&str, f64> {
    let mut out = BTreeMap::new();
    for w in words {
        *out.entry(w.as_ref()).or_insert(0.0) += 1.0;
    }
    out
}

/// Joint walk over two count maps: `(count in a, count in b)` per word.
fn joint<'a>(a: &'a BTreeMap<&str, f64>, b: &'a BTreeMap<&str, f64>) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    for (w, &ca) in a {
        out.push((ca, b.get(w).copied().unwrap_or(0.0)));
    }
    for (w, &cb) in b {
        if !a.contains_key(w) {
            out.push((0.0, cb));
        }
    }
    out
}

pub fn token_set_similarity<S: AsRef<str>>(measure: TokenMeasure, a: &[S], b: &[S]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        _ => {}
    }
    if measure == TokenMeasure::MongeElkan {
        return monge_elkan(a, b);
    }
    let ca = counts(a);
    let cb = counts(b);
    let pairs = joint(&ca, &cb);
    let shared = pairs.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).count() as f64;
    let sim = match measure {
        TokenMeasure::Cosine => {
            let dot: f64 = pairs.iter().map(|(x, y)| x * y).sum();
            let na: f64 = ca.values().map(|x| x * x).sum::<f64>().sqrt();
            let nb: f64 = cb.values().map(|x| x * x).sum::<f64>().sqrt();
            dot / (na * nb)
        }
        TokenMeasure::Euclidean => {
            let d: f64 = pairs
                .iter()
                .map(|(x, y)| (x - y).powi(2))
                .sum::<f64>()
                .sqrt();
            1.0 / (1.0 + d)
        }
        TokenMeasure::Block => {
            let d: f64 = pairs.iter().map(|(x, y)| (x - y).abs()).sum();
            1.0 - d / (a.len() + b.len()) as f64
        }
        TokenMeasure::Overlap => shared / ca.len().min(cb.len()) as f64,
        TokenMeasure::Dice => 2.0 * shared / (ca.len() + cb.len()) as f64,
        TokenMeasure::SimonWhite => {
            let common: f64 = pairs.iter().map(|(x, y)| x.min(*y)).sum();
            2.0 * common / (a.len() + b.len()) as f64
        }
        TokenMeasure::Jaccard => shared / ((ca.len() + cb.len()) as f64 - shared),
        TokenMeasure::GeneralizedJaccard => {
            let lo: f64 = pairs.iter().map(|(x, y)| x.min(*y)).sum();
            let hi: f64 = pairs.iter().map(|(x, y)| x.max(*y)).sum();
            lo / hi
        }
        TokenMeasure::MongeElkan => unreachable!(),
    };
    sim.clamp(0.0, 1.0)
}

/// Mean over words of `a` of the best Smith-Waterman score against `b`.
fn monge_elkan<S: AsRef<str>>(a: &[S], b: &[S]) -> f64 {
    let bs: Vec<Vec<char>> = b.iter().map(|w| w.as_ref().chars().collect()).collect();
    let total: f64 = a
        .iter()
        .map(|w| {
            let wa: Vec<char> = w.as_ref().chars().collect();
            bs.iter()
                .map(|wb| smith_waterman(&wa, wb))
                .fold(0.0, f64::max)
        })
        .sum();
    total / a.len() as f64
}
