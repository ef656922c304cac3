use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;
use crate::matching::Matching;

/// True duplicate pairs of a clean-clean task, by external id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundTruth {
    pairs: BTreeSet<(String, String)>,
    by_left: HashMap<String, String>,
    by_right: HashMap<String, String>,
}

impl GroundTruth {
    pub fn new<I, L, R>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (L, R)>,
        L: Into<String>,
        R: Into<String>,
    {
        let mut gt = GroundTruth::default();
        for (l, r) in pairs {
            gt.insert(l.into(), r.into())?;
        }
        Ok(gt)
    }

    /// Adds a pair; either id already used is a 1-1 violation.
    pub fn insert(&mut self, left: String, right: String) -> Result<()> {
        if self.by_left.contains_key(&left) {
            return Err(Error::DuplicateId(left));
        }
        if self.by_right.contains_key(&right) {
            return Err(Error::DuplicateId(right));
        }
        self.by_left.insert(left.clone(), right.clone());
        self.by_right.insert(right.clone(), left.clone());
        self.pairs.insert((left, right));
        Ok(())
    }

    pub fn contains(&self, left: &str, right: &str) -> bool {
        self.by_left.get(left).is_some_and(|r| r == right)
    }

    pub fn partner_of_left(&self, left: &str) -> Option<&str> {
        self.by_left.get(left).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in ascending (left, right) order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(l, r)| (l.as_str(), r.as_str()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrfScore {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub true_positives: usize,
    pub output_pairs: usize,
    pub gt_pairs: usize,
}

impl PrfScore {
    pub fn from_counts(true_positives: usize, output_pairs: usize, gt_pairs: usize) -> Self {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(true_positives, output_pairs);
        let recall = ratio(true_positives, gt_pairs);
        let f_measure = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        PrfScore {
            precision,
            recall,
            f_measure,
            true_positives,
            output_pairs,
            gt_pairs,
        }
    }
}

/// Scores a matching whose indices refer to `ids`.
pub fn evaluate(m: &Matching, gt: &GroundTruth, ids: &SimilarityGraph) -> PrfScore {
    let tp = m
        .pairs()
        .filter(|&(l, r)| gt.contains(&ids.left_ids()[l], &ids.right_ids()[r]))
        .count();
    PrfScore::from_counts(tp, m.len(), gt.len())
}
