use crate::error::{check_threshold, Result};
use crate::graph::{NodeRef, Side, SimilarityGraph};
use crate::matchers::BmcBasis;
use crate::matching::Matching;

/// Best match clustering: each basis node, in index order, takes its most
/// similar not-yet-matched counterpart among edges `>= t`.
pub fn match_bmc(g: &SimilarityGraph, t: f64, basis: BmcBasis) -> Result<Matching> {
    check_threshold(t)?;
    let side = basis.resolve(g);
    let mut m = Matching::for_graph(g);
    for i in 0..g.count(side) {
        let taken = g
            .adjacent_above(NodeRef { side, index: i }, t)
            .find(|e| match side {
                Side::Left => !m.is_right_matched(e.right),
                Side::Right => !m.is_left_matched(e.left),
            });
        if let Some(e) = taken {
            m.try_insert(e.left, e.right);
        }
    }
    Ok(m)
}
