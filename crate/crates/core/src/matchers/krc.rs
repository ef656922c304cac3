//! Király-style approximation to maximum stable marriage.
//!
//! Left nodes ("men") propose down their `>= t` preference lists, taken from
//! a queue in insertion order; right nodes ("women") hold at most one fiancé.
//! A man who exhausts his list is given one second chance with the list
//! restored. A woman accepts a proposer over her fiancé when his edge is
//! heavier, or equally heavy while he is on his second chance and the fiancé
//! is not. A rejected man keeps proposing before the queue moves on.

use std::collections::VecDeque;

use crate::error::{check_threshold, Result};
use crate::graph::{Edge, NodeRef, SimilarityGraph};
use crate::matching::Matching;

pub fn match_krc(g: &SimilarityGraph, t: f64) -> Result<Matching> {
    check_threshold(t)?;
    let men = g.left_count();
    let prefs: Vec<Vec<&Edge>> = (0..men)
        .map(|i| g.adjacent_above(NodeRef::left(i), t).collect())
        .collect();
    let mut next = vec![0usize; men];
    let mut second_chance = vec![false; men];
    let mut fiance: Vec<Option<(usize, f64)>> = vec![None; g.right_count()];
    let mut free: VecDeque<usize> = (0..men).collect();

    while let Some(man) = free.pop_front() {
        if let Some(e) = prefs[man].get(next[man]) {
            next[man] += 1;
            let woman = e.right;
            match fiance[woman] {
                None => fiance[woman] = Some((man, e.weight)),
                Some((rival, rival_weight)) => {
                    let accepts = e.weight > rival_weight
                        || (e.weight == rival_weight
                            && second_chance[man]
                            && !second_chance[rival]);
                    if accepts {
                        fiance[woman] = Some((man, e.weight));
                        free.push_back(rival);
                    } else {
                        free.push_front(man);
                    }
                }
            }
        } else if !second_chance[man] {
            second_chance[man] = true;
            next[man] = 0;
            free.push_back(man);
        }
    }

    let mut m = Matching::for_graph(g);
    for (woman, f) in fiance.iter().enumerate() {
        if let Some((man, _)) = f {
            m.try_insert(*man, woman);
        }
    }
    Ok(m)
}
