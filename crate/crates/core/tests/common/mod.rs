#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use erbimatch::{Edge, SimilarityGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random bipartite graph with up to `max_side` nodes per partition. About a
/// third of the graphs use weights on a 0.05 grid so that ties occur.
pub fn random_graph(seed: u64, max_side: usize) -> SimilarityGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left = rng.gen_range(1..=max_side);
    let right = rng.gen_range(1..=max_side);
    let density: f64 = rng.gen_range(0.05..1.0);
    let quantized = rng.gen_bool(0.35);
    let mut edges = Vec::new();
    for l in 0..left {
        for r in 0..right {
            if rng.gen_bool(density) {
                let w = if quantized {
                    rng.gen_range(0..=20) as f64 / 20.0
                } else {
                    rng.gen::<f64>()
                };
                edges.push(Edge::new(l, r, w));
            }
        }
    }
    SimilarityGraph::with_counts(left, right, edges).unwrap()
}

/// Maximum total weight of a matching restricted to edges `>= t`, by
/// enumerating every matching.
pub fn brute_force_optimum(g: &SimilarityGraph, t: f64) -> f64 {
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); g.left_count()];
    for e in g.edges() {
        if e.weight >= t {
            rows[e.left].push((e.right, e.weight));
        }
    }
    fn go(rows: &[Vec<(usize, f64)>], row: usize, used: &mut Vec<bool>) -> f64 {
        if row == rows.len() {
            return 0.0;
        }
        let mut best = go(rows, row + 1, used);
        for &(r, w) in &rows[row] {
            if !used[r] {
                used[r] = true;
                best = best.max(w + go(rows, row + 1, used));
                used[r] = false;
            }
        }
        best
    }
    go(&rows, 0, &mut vec![false; g.right_count()])
}

/// Mutual-best pairs by scanning the full edge list once per edge.
pub fn mutual_best_oracle(g: &SimilarityGraph, t: f64) -> BTreeSet<(usize, usize)> {
    let eligible: Vec<&Edge> = g.edges().iter().filter(|e| e.weight >= t).collect();
    let left_best = |l: usize| {
        eligible
            .iter()
            .filter(|e| e.left == l)
            .fold(None::<(f64, usize)>, |acc, e| match acc {
                Some((w, r)) if w > e.weight || (w == e.weight && r < e.right) => Some((w, r)),
                _ => Some((e.weight, e.right)),
            })
            .map(|(_, r)| r)
    };
    let right_best = |r: usize| {
        eligible
            .iter()
            .filter(|e| e.right == r)
            .fold(None::<(f64, usize)>, |acc, e| match acc {
                Some((w, l)) if w > e.weight || (w == e.weight && l < e.left) => Some((w, l)),
                _ => Some((e.weight, e.left)),
            })
            .map(|(_, l)| l)
    };
    eligible
        .iter()
        .filter(|e| left_best(e.left) == Some(e.right) && right_best(e.right) == Some(e.left))
        .map(|e| (e.left, e.right))
        .collect()
}

/// Straight-line interpreter of the ricochet rippling procedure, written
/// against a plain edge map with string-free integer node labels. Left node
/// `i` is `i`, right node `j` is `left_count + j`.
pub fn rsr_interpreter(g: &SimilarityGraph, t: f64) -> BTreeSet<(usize, usize)> {
    let nl = g.left_count();
    let n = nl + g.right_count();
    let mut sim: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for e in g.edges() {
        if e.weight >= t {
            sim.insert((e.left, nl + e.right), e.weight);
            sim.insert((nl + e.right, e.left), e.weight);
        }
    }
    // neighbors of v sorted by descending weight, then by (left, right)
    let neighbors = |v: usize| -> Vec<(usize, f64)> {
        let mut out: Vec<(usize, f64)> = (0..n)
            .filter_map(|u| sim.get(&(v, u)).map(|&w| (u, w)))
            .collect();
        out.sort_by(|a, b| {
            let key = |u: usize| if v < nl { (v, u - nl) } else { (u, v - nl) };
            b.1.partial_cmp(&a.1).unwrap().then(key(a.0).cmp(&key(b.0)))
        });
        out
    };

    let mut order: Vec<(usize, f64)> = Vec::new();
    for v in 0..n {
        let adj = neighbors(v);
        if !adj.is_empty() {
            let total: f64 = adj.iter().map(|x| x.1).sum();
            order.push((v, total / adj.len() as f64));
        }
    }
    order.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));

    let mut sim_with_center = vec![0.0f64; n];
    let mut center_of: Vec<usize> = (0..n).collect();
    let mut centers: BTreeSet<usize> = BTreeSet::new();
    let mut partition: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];

    for (vi, _) in order {
        if centers.contains(&vi) {
            continue;
        }
        let mut to_reassign: Vec<usize> = Vec::new();
        let seed_is_member = center_of[vi] != vi;
        for (vj, w) in neighbors(vi) {
            if seed_is_member && w <= sim_with_center[vi] {
                break;
            }
            if centers.contains(&vj) {
                continue;
            }
            if w > sim_with_center[vj] {
                let old = center_of[vj];
                partition[old].remove(&vj);
                partition[vi].insert(vj);
                if old != vj && !to_reassign.contains(&old) {
                    to_reassign.push(old);
                }
                sim_with_center[vj] = w;
                center_of[vj] = vi;
                break;
            }
        }
        if !partition[vi].is_empty() {
            if center_of[vi] != vi {
                let old = center_of[vi];
                partition[old].remove(&vi);
                if !to_reassign.contains(&old) {
                    to_reassign.push(old);
                }
            }
            centers.insert(vi);
            partition[vi].insert(vi);
            center_of[vi] = vi;
            sim_with_center[vi] = 1.0;
        }
        for vk in to_reassign {
            let alone = centers.contains(&vk) && partition[vk].len() == 1;
            if !alone {
                continue;
            }
            let mut max_sim = 0.0;
            let mut c_max = vk;
            for (vl, w) in neighbors(vk) {
                let single = center_of[vl] == vl && partition[vl].len() < 2;
                if w > max_sim && single {
                    c_max = vl;
                    max_sim = w;
                }
            }
            if max_sim > 0.0 {
                partition[vk].clear();
                centers.remove(&vk);
                if !centers.contains(&c_max) {
                    centers.insert(c_max);
                    partition[c_max].insert(c_max);
                    center_of[c_max] = c_max;
                    sim_with_center[c_max] = 1.0;
                }
                partition[c_max].insert(vk);
                center_of[vk] = c_max;
                sim_with_center[vk] = max_sim;
            }
        }
    }

    partition
        .iter()
        .filter(|p| p.len() == 2)
        .map(|p| {
            let a = *p.iter().next().unwrap();
            let b = *p.iter().nth(1).unwrap();
            (a, b - nl)
        })
        .collect()
}
