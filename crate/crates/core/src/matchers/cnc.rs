use crate::error::Result;
use crate::graph::{Side, SimilarityGraph};
use crate::matching::Matching;

/// Connected components clustering.
///
/// Prunes edges below `t`, then keeps the components made of exactly one
/// left and one right node.
pub fn match_cnc(g: &SimilarityGraph, t: f64) -> Result<Matching> {
    let pruned = g.prune_edges(t)?;
    let mut m = Matching::for_graph(g);
    for component in pruned.connected_components() {
        if let [a, b] = component.as_slice() {
            if a.side == Side::Left && b.side == Side::Right {
                m.try_insert(a.index, b.index);
            }
        }
    }
    Ok(m)
}
