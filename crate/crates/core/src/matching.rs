use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;

/// A set of cross-partition pairs in which every node appears at most once.
///
/// Unmatched nodes are the singleton clusters of the output; they are not
/// stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    left_partner: Vec<Option<usize>>,
    right_partner: Vec<Option<usize>>,
}

impl Matching {
    pub fn new(left_count: usize, right_count: usize) -> Self {
        Matching {
            left_partner: vec![None; left_count],
            right_partner: vec![None; right_count],
        }
    }

    pub fn for_graph(g: &SimilarityGraph) -> Self {
        Self::new(g.left_count(), g.right_count())
    }

    /// Builds a matching, rejecting pairs that reuse a node.
    pub fn from_pairs(
        left_count: usize,
        right_count: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut m = Self::new(left_count, right_count);
        for (l, r) in pairs {
            if l >= left_count || r >= right_count {
                return Err(Error::InvalidArgument(format!(
                    "pair ({l}, {r}) outside a {left_count}x{right_count} graph"
                )));
            }
            if !m.try_insert(l, r) {
                return Err(Error::InvalidArgument(format!(
                    "pair ({l}, {r}) violates the unique mapping constraint"
                )));
            }
        }
        Ok(m)
    }

    /// Adds `(left, right)` if both are free; returns whether it was added.
    pub fn try_insert(&mut self, left: usize, right: usize) -> bool {
        if self.left_partner[left].is_some() || self.right_partner[right].is_some() {
            return false;
        }
        self.left_partner[left] = Some(right);
        self.right_partner[right] = Some(left);
        true
    }

    pub fn remove_left(&mut self, left: usize) -> Option<usize> {
        let right = self.left_partner[left].take()?;
        self.right_partner[right] = None;
        Some(right)
    }

    pub fn partner_of_left(&self, left: usize) -> Option<usize> {
        self.left_partner[left]
    }

    pub fn partner_of_right(&self, right: usize) -> Option<usize> {
        self.right_partner[right]
    }

    pub fn is_left_matched(&self, left: usize) -> bool {
        self.left_partner[left].is_some()
    }

    pub fn is_right_matched(&self, right: usize) -> bool {
        self.right_partner[right].is_some()
    }

    pub fn contains(&self, left: usize, right: usize) -> bool {
        self.left_partner.get(left).copied().flatten() == Some(right)
    }

    pub fn len(&self) -> usize {
        self.left_partner.iter().filter(|p| p.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.left_partner.iter().all(Option::is_none)
    }

    pub fn left_count(&self) -> usize {
        self.left_partner.len()
    }

    pub fn right_count(&self) -> usize {
        self.right_partner.len()
    }

    /// Pairs in ascending left index.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_partner
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
    }

    /// Drops every pair whose graph weight is below `t` (absent edges count
    /// as weight 0).
    pub fn retain_at_least(&mut self, g: &SimilarityGraph, t: f64) {
        let weak: Vec<usize> = self
            .pairs()
            .filter(|&(l, r)| g.weight(l, r).is_none_or(|w| w < t))
            .map(|(l, _)| l)
            .collect();
        for l in weak {
            self.remove_left(l);
        }
    }

    /// Sum of edge weights over matched pairs.
    pub fn assignment_value(&self, g: &SimilarityGraph) -> AssignmentValue {
        AssignmentValue(
            self.pairs()
                .map(|(l, r)| g.weight(l, r).unwrap_or(0.0))
                .sum(),
        )
    }

    /// Pairs as external identifiers.
    pub fn id_pairs<'g>(&self, g: &'g SimilarityGraph) -> Vec<(&'g str, &'g str)> {
        self.pairs()
            .map(|(l, r)| (g.left_ids()[l].as_str(), g.right_ids()[r].as_str()))
            .collect()
    }
}

/// Total weight of the matched pairs.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
pub struct AssignmentValue(pub f64);

impl AssignmentValue {
    pub fn value(self) -> f64 {
        self.0
    }
}
