use crate::error::{check_threshold, Result};
use crate::graph::{edge_order, Edge, SimilarityGraph};
use crate::matching::Matching;

/// Unique mapping clustering: global greedy over edges `>= t` in descending
/// weight, taking an edge whenever both endpoints are still free.
pub fn match_umc(g: &SimilarityGraph, t: f64) -> Result<Matching> {
    check_threshold(t)?;
    let mut queue: Vec<&Edge> = g.edges().iter().filter(|e| e.weight >= t).collect();
    queue.sort_unstable_by(|a, b| edge_order(a, b));
    let mut m = Matching::for_graph(g);
    for e in queue {
        m.try_insert(e.left, e.right);
    }
    Ok(m)
}
