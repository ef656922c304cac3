//! Best assignment heuristic: random pairwise swaps over an initial
//! index-aligned assignment.
//!
//! The larger partition is the swap side. Each of its nodes holds at most one
//! partner from the smaller side; initially node `i` holds partner `i` for
//! every `i` below the smaller size. A move picks two distinct swap-side nodes
//! at random and exchanges their partners when the exchange does not lower the
//! total contribution. Contributions are edge weights `>= t`, zero otherwise.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_threshold, Result};
use crate::graph::{Side, SimilarityGraph};
use crate::matchers::BahConfig;
use crate::matching::Matching;

const CLOCK_CHECK_INTERVAL: u64 = 256;

pub fn match_bah(g: &SimilarityGraph, t: f64, cfg: &BahConfig) -> Result<Matching> {
    search(g, t, cfg, None)
}

/// As [`match_bah`], also recording the assignment value after every
/// accepted swap (the first entry is the initial value).
pub fn match_bah_traced(
    g: &SimilarityGraph,
    t: f64,
    cfg: &BahConfig,
) -> Result<(Matching, Vec<f64>)> {
    let mut trace = Vec::new();
    let m = search(g, t, cfg, Some(&mut trace))?;
    Ok((m, trace))
}

fn search(
    g: &SimilarityGraph,
    t: f64,
    cfg: &BahConfig,
    mut trace: Option<&mut Vec<f64>>,
) -> Result<Matching> {
    check_threshold(t)?;
    cfg.validate()?;
    let swap_side = if g.left_count() > g.right_count() {
        Side::Left
    } else {
        Side::Right
    };
    let big = g.count(swap_side);
    let small = g.count(swap_side.opposite());

    let contribution = |node: usize, partner: Option<usize>| -> f64 {
        let Some(partner) = partner else { return 0.0 };
        let w = match swap_side {
            Side::Left => g.weight(node, partner),
            Side::Right => g.weight(partner, node),
        };
        w.filter(|&w| w >= t).unwrap_or(0.0)
    };

    let mut partner: Vec<Option<usize>> = (0..big).map(|i| (i < small).then_some(i)).collect();
    let mut value = 0.0;
    if let Some(trace) = trace.as_deref_mut() {
        value = (0..big).map(|i| contribution(i, partner[i])).sum();
        trace.push(value);
    }

    if big >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        let started = Instant::now();
        for moves in 0..cfg.max_moves {
            if moves % CLOCK_CHECK_INTERVAL == 0 && started.elapsed() >= cfg.time_limit {
                break;
            }
            let i = rng.gen_range(0..big);
            let mut j = rng.gen_range(0..big - 1);
            if j >= i {
                j += 1;
            }
            let (pi, pj) = (partner[i], partner[j]);
            let delta = contribution(j, pi) - contribution(i, pi) + contribution(i, pj)
                - contribution(j, pj);
            if delta >= 0.0 {
                partner.swap(i, j);
                if let Some(trace) = trace.as_deref_mut() {
                    value += delta;
                    trace.push(value);
                }
            }
        }
    }

    let mut m = Matching::for_graph(g);
    for (node, p) in partner.iter().enumerate() {
        if let Some(p) = *p {
            match swap_side {
                Side::Left => m.try_insert(node, p),
                Side::Right => m.try_insert(p, node),
            };
        }
    }
    m.retain_at_least(g, t);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::example_graph;
    use crate::graph::Edge;
    use crate::matchers::tests::{named_pairs, pairs};

    fn cfg(max_moves: u64, seed: u64) -> BahConfig {
        BahConfig {
            max_moves,
            rng_seed: seed,
            ..BahConfig::default()
        }
    }

    #[test]
    fn zero_moves_returns_filtered_initial_assignment() {
        let g = example_graph();
        let m = match_bah(&g, 0.5, &cfg(0, 1)).unwrap();
        // A1-B1 and A2-B2 exist; A3-B3 and A4-B4 are absent
        assert_eq!(named_pairs(&g, &m), pairs(&[("A1", "B1"), ("A2", "B2")]));
    }

    #[test]
    fn same_seed_same_result() {
        let g = SimilarityGraph::with_counts(
            4,
            4,
            (0..4)
                .flat_map(|l| {
                    (0..4).map(move |r| Edge::new(l, r, ((l * 7 + r * 3) % 10) as f64 / 10.0))
                })
                .collect(),
        )
        .unwrap();
        let a = match_bah(&g, 0.2, &cfg(500, 9)).unwrap();
        let b = match_bah(&g, 0.2, &cfg(500, 9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn accepted_values_never_decrease() {
        let g = example_graph();
        for seed in 0..20 {
            let (_, trace) = match_bah_traced(&g, 0.5, &cfg(2_000, seed)).unwrap();
            assert!(
                trace.windows(2).all(|w| w[1] >= w[0] - 1e-12),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn swap_side_follows_larger_partition() {
        // more right nodes than left: right is the swap side
        let g = SimilarityGraph::with_counts(1, 3, vec![Edge::new(0, 2, 0.9)]).unwrap();
        let m = match_bah(&g, 0.5, &cfg(1_000, 3)).unwrap();
        assert_eq!(m.pairs().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn zero_time_limit_rejected() {
        let g = example_graph();
        let bad = BahConfig {
            time_limit: std::time::Duration::ZERO,
            ..BahConfig::default()
        };
        assert!(match_bah(&g, 0.5, &bad).is_err());
    }
}
