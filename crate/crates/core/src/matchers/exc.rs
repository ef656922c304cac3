use crate::error::{check_threshold, Result};
use crate::graph::{NodeRef, SimilarityGraph};
use crate::matching::Matching;

/// Exact clustering: keeps `(i, j)` when each is the other's top neighbor
/// among edges `>= t`.
pub fn match_exc(g: &SimilarityGraph, t: f64) -> Result<Matching> {
    check_threshold(t)?;
    let mut m = Matching::for_graph(g);
    for i in 0..g.left_count() {
        let Some(best) = g.adjacent_above(NodeRef::left(i), t).next() else {
            continue;
        };
        let reciprocal = g
            .adjacent_above(NodeRef::right(best.right), t)
            .next()
            .is_some_and(|back| back.left == i);
        if reciprocal {
            m.try_insert(i, best.right);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::example_graph;
    use crate::graph::Edge;
    use crate::matchers::tests::{named_pairs, pairs};

    #[test]
    fn reference_graph() {
        let g = example_graph();
        let m = match_exc(&g, 0.5).unwrap();
        assert_eq!(
            named_pairs(&g, &m),
            pairs(&[("A5", "B1"), ("A2", "B2"), ("A3", "B4")])
        );
    }

    #[test]
    fn only_reciprocated_best_match_kept() {
        // both left nodes prefer R0, which prefers L1
        let g = SimilarityGraph::with_counts(
            2,
            2,
            vec![
                Edge::new(0, 0, 0.7),
                Edge::new(1, 0, 0.9),
                Edge::new(0, 1, 0.6),
            ],
        )
        .unwrap();
        let m = match_exc(&g, 0.5).unwrap();
        assert_eq!(m.pairs().collect::<Vec<_>>(), vec![(1, 0)]);
    }
}
