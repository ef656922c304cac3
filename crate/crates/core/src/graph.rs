//! Bipartite similarity graphs.
//!
//! A [`SimilarityGraph`] holds two node partitions (left and right) addressed
//! by dense indices, plus a side table of external identifiers per partition.
//! Edges only ever connect a left node to a right node. The graph is immutable
//! once built; pruning and normalization return new graphs.
//!
//! Adjacency is iterated in a fixed total order: descending weight, ties
//! broken by ascending `(left, right)`. Every matcher relies on this order for
//! deterministic tie-breaking.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_threshold, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A node of the bipartite graph. Orders left nodes before right nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeRef {
    pub side: Side,
    pub index: usize,
}

impl NodeRef {
    pub fn left(index: usize) -> Self {
        NodeRef {
            side: Side::Left,
            index,
        }
    }

    pub fn right(index: usize) -> Self {
        NodeRef {
            side: Side::Right,
            index,
        }
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Left => write!(f, "L{}", self.index),
            Side::Right => write!(f, "R{}", self.index),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub left: usize,
    pub right: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(left: usize, right: usize, weight: f64) -> Self {
        Edge {
            left,
            right,
            weight,
        }
    }

    /// The endpoint on `side`.
    pub fn endpoint(&self, side: Side) -> usize {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }
}

/// Descending weight, then ascending `(left, right)`.
pub fn edge_order(a: &Edge, b: &Edge) -> Ordering {
    b.weight
        .total_cmp(&a.weight)
        .then_with(|| (a.left, a.right).cmp(&(b.left, b.right)))
}

/// Compressed adjacency: `targets[offsets[i]..offsets[i + 1]]` are edge
/// indices of node `i`, in [`edge_order`].
#[derive(Clone, Debug, Default)]
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Adjacency {
    fn build(node_count: usize, edges: &[Edge], side: Side) -> Self {
        let mut offsets = vec![0usize; node_count + 1];
        for e in edges {
            offsets[e.endpoint(side) + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0usize; edges.len()];
        for (idx, e) in edges.iter().enumerate() {
            let node = e.endpoint(side);
            targets[cursor[node]] = idx;
            cursor[node] += 1;
        }
        for i in 0..node_count {
            targets[offsets[i]..offsets[i + 1]].sort_by(|&a, &b| edge_order(&edges[a], &edges[b]));
        }
        Adjacency { offsets, targets }
    }

    fn of(&self, node: usize) -> &[usize] {
        &self.targets[self.offsets[node]..self.offsets[node + 1]]
    }
}

/// Weighted bipartite graph `G = (V1, V2, E)`.
#[derive(Clone, Debug)]
pub struct SimilarityGraph {
    left_ids: Vec<String>,
    right_ids: Vec<String>,
    left_lookup: HashMap<String, usize>,
    right_lookup: HashMap<String, usize>,
    /// Sorted by `(left, right)`.
    edges: Vec<Edge>,
    left_adj: Adjacency,
    right_adj: Adjacency,
}

impl SimilarityGraph {
    /// Builds a graph from identifier tables and an edge list.
    ///
    /// Fails on out-of-range endpoints, duplicate `(left, right)` pairs,
    /// non-finite weights, or repeated identifiers within a partition.
    pub fn new(
        left_ids: Vec<String>,
        right_ids: Vec<String>,
        mut edges: Vec<Edge>,
    ) -> Result<Self> {
        let left_lookup = id_lookup(&left_ids)?;
        let right_lookup = id_lookup(&right_ids)?;
        for e in &mut edges {
            if e.left >= left_ids.len() || e.right >= right_ids.len() {
                return Err(Error::InvalidArgument(format!(
                    "edge ({}, {}) outside a {}x{} graph",
                    e.left,
                    e.right,
                    left_ids.len(),
                    right_ids.len()
                )));
            }
            if !e.weight.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "edge ({}, {}) has non-finite weight",
                    e.left, e.right
                )));
            }
            // folds -0.0 into 0.0 so total_cmp agrees with ==
            e.weight += 0.0;
        }
        edges.sort_by_key(|e| (e.left, e.right));
        if let Some(w) = edges
            .windows(2)
            .find(|w| (w[0].left, w[0].right) == (w[1].left, w[1].right))
        {
            return Err(Error::InvalidArgument(format!(
                "duplicate edge ({}, {})",
                w[0].left, w[0].right
            )));
        }
        let left_adj = Adjacency::build(left_ids.len(), &edges, Side::Left);
        let right_adj = Adjacency::build(right_ids.len(), &edges, Side::Right);
        Ok(SimilarityGraph {
            left_ids,
            right_ids,
            left_lookup,
            right_lookup,
            edges,
            left_adj,
            right_adj,
        })
    }

    /// Builds a graph whose identifiers are the decimal node indices.
    pub fn with_counts(left_count: usize, right_count: usize, edges: Vec<Edge>) -> Result<Self> {
        let ids = |n: usize| (0..n).map(|i| i.to_string()).collect();
        Self::new(ids(left_count), ids(right_count), edges)
    }

    pub fn left_count(&self) -> usize {
        self.left_ids.len()
    }

    pub fn right_count(&self) -> usize {
        self.right_ids.len()
    }

    pub fn count(&self, side: Side) -> usize {
        match side {
            Side::Left => self.left_count(),
            Side::Right => self.right_count(),
        }
    }

    /// `n = |V1| + |V2|`.
    pub fn node_count(&self) -> usize {
        self.left_count() + self.right_count()
    }

    /// `m = |E|`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges sorted by `(left, right)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn left_ids(&self) -> &[String] {
        &self.left_ids
    }

    pub fn right_ids(&self) -> &[String] {
        &self.right_ids
    }

    pub fn ids(&self, side: Side) -> &[String] {
        match side {
            Side::Left => &self.left_ids,
            Side::Right => &self.right_ids,
        }
    }

    pub fn index_of(&self, side: Side, id: &str) -> Option<usize> {
        match side {
            Side::Left => self.left_lookup.get(id).copied(),
            Side::Right => self.right_lookup.get(id).copied(),
        }
    }

    /// Edges incident to `node` in descending weight order.
    pub fn adjacent(&self, node: NodeRef) -> impl ExactSizeIterator<Item = &Edge> + '_ {
        let adj = match node.side {
            Side::Left => &self.left_adj,
            Side::Right => &self.right_adj,
        };
        adj.of(node.index).iter().map(move |&idx| &self.edges[idx])
    }

    /// Incident edges with weight `>= t`; a prefix of [`Self::adjacent`].
    pub fn adjacent_above(&self, node: NodeRef, t: f64) -> impl Iterator<Item = &Edge> + '_ {
        self.adjacent(node).take_while(move |e| e.weight >= t)
    }

    pub fn degree(&self, node: NodeRef) -> usize {
        self.adjacent(node).len()
    }

    /// Weight of the `(left, right)` edge, if present.
    pub fn weight(&self, left: usize, right: usize) -> Option<f64> {
        let start = self.edges.partition_point(|e| e.left < left);
        let end = self.edges.partition_point(|e| e.left <= left);
        let row = &self.edges[start..end];
        row.binary_search_by_key(&right, |e| e.right)
            .ok()
            .map(|i| row[i].weight)
    }

    /// Edges in [`edge_order`].
    pub fn edges_by_weight(&self) -> Vec<Edge> {
        let mut sorted = self.edges.clone();
        sorted.sort_by(edge_order);
        sorted
    }

    pub fn weight_range(&self) -> Option<(f64, f64)> {
        self.edges.iter().fold(None, |acc, e| match acc {
            None => Some((e.weight, e.weight)),
            Some((lo, hi)) => Some((lo.min(e.weight), hi.max(e.weight))),
        })
    }

    pub fn is_normalized(&self) -> bool {
        self.edges.iter().all(|e| (0.0..=1.0).contains(&e.weight))
    }

    fn with_edges(&self, edges: Vec<Edge>) -> SimilarityGraph {
        let left_adj = Adjacency::build(self.left_count(), &edges, Side::Left);
        let right_adj = Adjacency::build(self.right_count(), &edges, Side::Right);
        SimilarityGraph {
            left_ids: self.left_ids.clone(),
            right_ids: self.right_ids.clone(),
            left_lookup: self.left_lookup.clone(),
            right_lookup: self.right_lookup.clone(),
            edges,
            left_adj,
            right_adj,
        }
    }

    /// Keeps exactly the edges with weight `>= t`. Node tables are unchanged.
    pub fn prune_edges(&self, t: f64) -> Result<SimilarityGraph> {
        check_threshold(t)?;
        let kept = self
            .edges
            .iter()
            .copied()
            .filter(|e| e.weight >= t)
            .collect();
        Ok(self.with_edges(kept))
    }

    /// Maps weights affinely onto `[0, 1]`. When all weights are equal every
    /// edge gets weight 1.
    pub fn min_max_normalize(&self) -> Result<SimilarityGraph> {
        let (lo, hi) = self
            .weight_range()
            .ok_or(Error::EmptyInput("graph has no edges to normalize"))?;
        let range = hi - lo;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let weight = if range > 0.0 {
                    ((e.weight - lo) / range).clamp(0.0, 1.0)
                } else {
                    1.0
                };
                Edge { weight, ..*e }
            })
            .collect();
        Ok(self.with_edges(edges))
    }

    /// Maximal connected node sets, isolated nodes included as singletons.
    ///
    /// Each component is sorted (left nodes first); components are ordered by
    /// their smallest node.
    pub fn connected_components(&self) -> Vec<Vec<NodeRef>> {
        let left = self.left_count();
        let mut sets = DisjointSet::new(self.node_count());
        for e in &self.edges {
            sets.union(e.left, left + e.right);
        }
        let mut slot_of_root: HashMap<usize, usize> = HashMap::new();
        let mut components: Vec<Vec<NodeRef>> = Vec::new();
        for node in 0..self.node_count() {
            let root = sets.find(node);
            let slot = *slot_of_root.entry(root).or_insert_with(|| {
                components.push(Vec::new());
                components.len() - 1
            });
            let node_ref = if node < left {
                NodeRef::left(node)
            } else {
                NodeRef::right(node - left)
            };
            components[slot].push(node_ref);
        }
        components
    }
}

fn id_lookup(ids: &[String]) -> Result<HashMap<String, usize>> {
    let mut lookup = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        if lookup.insert(id.clone(), i).is_some() {
            return Err(Error::DuplicateId(id.clone()));
        }
    }
    Ok(lookup)
}

#[derive(Clone, Debug)]
struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != node {
            let parent = self.parent[node];
            self.parent[node] = root;
            node = parent;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] = self.rank[a].saturating_add(1);
        }
        true
    }
}
