//! Ricochet sequential rippling restricted to two-node clusters.
//!
//! Nodes of both partitions act as seeds in descending order of the average
//! weight of their `>= t` edges. A seed pulls in the first adjacent node that
//! is not a center and is closer to the seed than to its current center. A
//! seed that already belongs to a cluster only leaves it for a strictly closer
//! neighbor. Centers left alone by a move are re-attached to their most
//! similar single-node cluster. Clusters of exactly two nodes form the output.

use crate::error::{check_threshold, Result};
use crate::graph::{Edge, Side, SimilarityGraph};
use crate::matchers::node_at;
use crate::matching::Matching;

struct Clusters {
    center_of: Vec<usize>,
    sim_with_center: Vec<f64>,
    is_center: Vec<bool>,
    members: Vec<Vec<usize>>,
}

impl Clusters {
    fn new(n: usize) -> Self {
        Clusters {
            center_of: (0..n).collect(),
            sim_with_center: vec![0.0; n],
            is_center: vec![false; n],
            members: vec![Vec::new(); n],
        }
    }

    fn detach(&mut self, node: usize) {
        let center = self.center_of[node];
        self.members[center].retain(|&x| x != node);
    }

    fn make_center(&mut self, node: usize) {
        self.is_center[node] = true;
        self.members[node].push(node);
        self.center_of[node] = node;
        self.sim_with_center[node] = 1.0;
    }

    fn is_single(&self, node: usize) -> bool {
        self.center_of[node] == node && self.members[node].len() < 2
    }
}

fn opposite(g: &SimilarityGraph, e: &Edge, from: Side) -> usize {
    match from {
        Side::Left => g.left_count() + e.right,
        Side::Right => e.left,
    }
}

pub fn match_rsr(g: &SimilarityGraph, t: f64) -> Result<Matching> {
    check_threshold(t)?;
    let n = g.node_count();

    let mut seeds: Vec<(usize, f64)> = (0..n)
        .filter_map(|u| {
            let (sum, count) = g
                .adjacent_above(node_at(g, u), t)
                .fold((0.0, 0usize), |(s, c), e| (s + e.weight, c + 1));
            (count > 0).then(|| (u, sum / count as f64))
        })
        .collect();
    seeds.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));

    let mut cl = Clusters::new(n);
    for (seed, _) in seeds {
        // already placed as the target of a re-attachment
        if cl.is_center[seed] {
            continue;
        }
        let seed_node = node_at(g, seed);
        let own_sim = (cl.center_of[seed] != seed).then(|| cl.sim_with_center[seed]);
        let mut to_reassign: Vec<usize> = Vec::new();

        for e in g.adjacent_above(seed_node, t) {
            if own_sim.is_some_and(|s| e.weight <= s) {
                break;
            }
            let other = opposite(g, e, seed_node.side);
            if cl.is_center[other] {
                continue;
            }
            if e.weight > cl.sim_with_center[other] {
                let previous = cl.center_of[other];
                cl.detach(other);
                cl.members[seed].push(other);
                if previous != other && !to_reassign.contains(&previous) {
                    to_reassign.push(previous);
                }
                cl.sim_with_center[other] = e.weight;
                cl.center_of[other] = seed;
                break;
            }
        }

        if !cl.members[seed].is_empty() {
            if cl.center_of[seed] != seed {
                let previous = cl.center_of[seed];
                cl.detach(seed);
                if !to_reassign.contains(&previous) {
                    to_reassign.push(previous);
                }
            }
            cl.make_center(seed);
        }

        for orphan in to_reassign {
            if !(cl.is_center[orphan] && cl.members[orphan].len() == 1) {
                continue;
            }
            let orphan_node = node_at(g, orphan);
            let mut max_sim = 0.0;
            let mut target = orphan;
            for e in g.adjacent_above(orphan_node, t) {
                let other = opposite(g, e, orphan_node.side);
                if e.weight > max_sim && cl.is_single(other) {
                    target = other;
                    max_sim = e.weight;
                }
            }
            if max_sim > 0.0 {
                cl.members[orphan].clear();
                cl.is_center[orphan] = false;
                if !cl.is_center[target] {
                    cl.make_center(target);
                }
                cl.members[target].push(orphan);
                cl.center_of[orphan] = target;
                cl.sim_with_center[orphan] = max_sim;
            }
        }
    }

    let mut m = Matching::for_graph(g);
    for center in 0..n {
        if let [a, b] = cl.members[center].as_slice() {
            let (l, r) = if *a < *b { (*a, *b) } else { (*b, *a) };
            let (l, r) = (node_at(g, l), node_at(g, r));
            debug_assert!(l.side == Side::Left && r.side == Side::Right);
            m.try_insert(l.index, r.index);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::example_graph;
    use crate::matchers::tests::{named_pairs, pairs};

    #[test]
    fn reference_graph() {
        let g = example_graph();
        let m = match_rsr(&g, 0.5).unwrap();
        assert_eq!(
            named_pairs(&g, &m),
            pairs(&[("A5", "B1"), ("A2", "B2"), ("A3", "B4")])
        );
    }

    #[test]
    fn edgeless_graph() {
        let g = SimilarityGraph::with_counts(3, 3, vec![]).unwrap();
        assert!(match_rsr(&g, 0.0).unwrap().is_empty());
    }

    #[test]
    fn member_seed_stays_with_closer_center() {
        // R0 joins L0 at 0.9 and, as a later seed, has nothing closer
        let g = SimilarityGraph::with_counts(
            2,
            2,
            vec![
                Edge::new(0, 0, 0.9),
                Edge::new(1, 0, 0.3),
                Edge::new(1, 1, 0.8),
            ],
        )
        .unwrap();
        let m = match_rsr(&g, 0.1).unwrap();
        assert_eq!(m.pairs().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
    }
}
