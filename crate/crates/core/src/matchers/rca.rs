use crate::error::{check_threshold, Result};
use crate::graph::{NodeRef, Side, SimilarityGraph};
use crate::matching::Matching;

/// The two candidate assignments of the row-column scan, before the final
/// threshold filter.
#[derive(Clone, Debug)]
pub struct RcaPasses {
    pub rows: Matching,
    pub rows_value: f64,
    pub columns: Matching,
    pub columns_value: f64,
}

impl RcaPasses {
    /// The row pass wins only when strictly better.
    pub fn best(self) -> (Matching, f64) {
        if self.rows_value > self.columns_value {
            (self.rows, self.rows_value)
        } else {
            (self.columns, self.columns_value)
        }
    }
}

fn scan(g: &SimilarityGraph, basis: Side) -> (Matching, f64) {
    let mut m = Matching::for_graph(g);
    let mut value = 0.0;
    for i in 0..g.count(basis) {
        let node = NodeRef {
            side: basis,
            index: i,
        };
        // absent edges weigh 0 and can never survive the final filter, so
        // only real edges are candidates
        for e in g.adjacent(node) {
            let free = match basis {
                Side::Left => !m.is_right_matched(e.right),
                Side::Right => !m.is_left_matched(e.left),
            };
            if free {
                m.try_insert(e.left, e.right);
                value += e.weight;
                break;
            }
        }
    }
    (m, value)
}

/// Runs both greedy passes over the unpruned graph.
pub fn rca_passes(g: &SimilarityGraph) -> RcaPasses {
    let (rows, rows_value) = scan(g, Side::Left);
    let (columns, columns_value) = scan(g, Side::Right);
    RcaPasses {
        rows,
        rows_value,
        columns,
        columns_value,
    }
}

/// Row-column assignment clustering.
pub fn match_rca(g: &SimilarityGraph, t: f64) -> Result<Matching> {
    check_threshold(t)?;
    let (mut m, _) = rca_passes(g).best();
    m.retain_at_least(g, t);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::example_graph;
    use crate::graph::Edge;
    use crate::matchers::tests::{named_pairs, pairs};

    #[test]
    fn reference_graph_finds_optimum() {
        let g = example_graph();
        let passes = rca_passes(&g);
        assert!((passes.rows_value - 2.70).abs() < 1e-12);
        assert!((passes.columns_value - 2.40).abs() < 1e-12);
        let m = match_rca(&g, 0.5).unwrap();
        assert_eq!(
            named_pairs(&g, &m),
            pairs(&[("A1", "B1"), ("A5", "B3"), ("A2", "B2"), ("A3", "B4")])
        );
        assert!((m.assignment_value(&g).value() - 2.70).abs() < 1e-12);
    }

    #[test]
    fn sub_threshold_pair_filtered_at_end() {
        let g = SimilarityGraph::with_counts(1, 1, vec![Edge::new(0, 0, 0.3)]).unwrap();
        assert_eq!(rca_passes(&g).rows.len(), 1);
        assert!(match_rca(&g, 0.5).unwrap().is_empty());
    }

    #[test]
    fn ties_between_passes_go_to_columns() {
        let g = SimilarityGraph::with_counts(1, 1, vec![Edge::new(0, 0, 0.5)]).unwrap();
        let p = rca_passes(&g);
        assert_eq!(p.rows_value, p.columns_value);
        assert_eq!(p.best().0.pairs().collect::<Vec<_>>(), vec![(0, 0)]);
    }
}
