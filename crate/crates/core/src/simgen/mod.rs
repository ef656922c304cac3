//! Learning-free similarity functions and similarity-graph construction.
//!
//! A similarity function pairs a representation model (raw string, bag of
//! n-grams, n-gram graph, precomputed vector) with a compatible measure.
//! [`build_similarity_graph`] applies one to every cross-collection pair.

mod bag;
mod config;
mod edit;
mod ngram_graph;
mod text;
mod token;
mod vector;

use std::collections::HashMap;

use rayon::prelude::*;

pub use bag::{bag_similarity, build_bag_model, BagMeasure, BagModel, CorpusStats, Scheme};
pub use config::{Measure, Model, Scope, SimFnConfig};
pub use edit::{edit_similarity, EditMeasure};
pub use ngram_graph::{build_ngram_graph, graph_similarity, GraphMeasure, NGramGraph};
pub use text::{extract_ngrams, normalize, Unit};
pub use token::{token_set_similarity, TokenMeasure};
pub use vector::{vector_similarity, Embeddings, VectorMeasure};

use crate::error::{Error, Result};
use crate::graph::{Edge, SimilarityGraph};
use crate::profile::EntityProfile;

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions<'a> {
    /// Abort when the Cartesian product exceeds this many pairs.
    pub max_pairs: Option<u64>,
    /// Left and right vectors for [`Model::PrecomputedVector`].
    pub embeddings: Option<(&'a Embeddings, &'a Embeddings)>,
}

#[derive(Debug, Clone)]
pub struct BuiltGraph {
    /// Min-max normalized graph; left is the first collection.
    pub graph: SimilarityGraph,
    /// Profiles without a usable representation, which contribute no edges.
    pub uncovered_left: usize,
    pub uncovered_right: usize,
}

/// The text a profile exposes under a scope, normalized. `None` when the
/// scoped attribute is missing.
fn scoped_values(p: &EntityProfile, scope: &Scope) -> Option<Vec<String>> {
    let values: Vec<String> = match scope {
        Scope::SchemaBased(attr) => p.values(attr).iter().map(|v| normalize(v)).collect(),
        Scope::SchemaAgnostic => p.all_values().map(normalize).collect(),
    };
    let values: Vec<String> = values.into_iter().filter(|v| !v.is_empty()).collect();
    (!values.is_empty()).then_some(values)
}

struct RawText {
    joined: String,
    words: Vec<String>,
}

type Sparse<K> = Vec<(K, f64)>;
type GramEdges = Vec<((String, String), f64)>;

/// Assigns ids in sorted gram order so that id order equals string order.
fn intern(docs: &[Option<Vec<String>>]) -> HashMap<&str, u32> {
    let mut all: Vec<&str> = docs
        .iter()
        .flatten()
        .flatten()
        .map(String::as_str)
        .collect();
    all.sort_unstable();
    all.dedup();
    all.into_iter()
        .enumerate()
        .map(|(i, g)| (g, i as u32))
        .collect()
}

pub fn build_similarity_graph(
    left: &[EntityProfile],
    right: &[EntityProfile],
    cfg: &SimFnConfig,
    opts: &BuildOptions,
) -> Result<BuiltGraph> {
    cfg.validate()?;
    if left.is_empty() || right.is_empty() {
        return Err(Error::EmptyInput("profile collection"));
    }
    let pairs = left.len() as u64 * right.len() as u64;
    if let Some(budget) = opts.max_pairs {
        if pairs > budget {
            return Err(Error::Config(format!(
                "{pairs} candidate pairs exceed the budget of {budget}"
            )));
        }
    }
    if let Scope::SchemaBased(attr) = &cfg.scope {
        if cfg.model != Model::PrecomputedVector
            && !left.iter().chain(right).any(|p| p.has_attribute(attr))
        {
            return Err(Error::Config(format!("no profile has attribute `{attr}`")));
        }
    }

    let symmetrize = cfg.measure.needs_symmetrizing();
    let (edges, uncovered_left, uncovered_right) = match (cfg.model, cfg.measure) {
        (Model::RawString, measure) => {
            let prep = |ps: &[EntityProfile]| -> Vec<Option<RawText>> {
                ps.iter()
                    .map(|p| {
                        scoped_values(p, &cfg.scope).map(|vs| {
                            let joined = vs.join(" ");
                            let words = joined.split(' ').map(str::to_string).collect();
                            RawText { joined, words }
                        })
                    })
                    .collect()
            };
            let (l, r) = (prep(left), prep(right));
            let sim = |a: &RawText, b: &RawText| match measure {
                Measure::Edit(m) => edit_similarity(m, &a.joined, &b.joined),
                Measure::Token(m) => token_set_similarity(m, &a.words, &b.words),
                _ => unreachable!("validated"),
            };
            pairwise(&l, &r, sim, symmetrize)
        }
        (Model::Bag { unit, n, scheme }, Measure::Bag(measure)) => {
            let grams = |ps: &[EntityProfile]| -> Vec<Option<Vec<String>>> {
                ps.iter()
                    .map(|p| {
                        scoped_values(p, &cfg.scope)
                            .map(|vs| bag::profile_grams(vs.iter().map(String::as_str), unit, n))
                    })
                    .collect()
            };
            let (gl, gr) = (grams(left), grams(right));
            let docs_l: Vec<&Vec<String>> = gl.iter().flatten().collect();
            let docs_r: Vec<&Vec<String>> = gr.iter().flatten().collect();
            let stats_l = CorpusStats::from_documents(&docs_l);
            let stats_r = CorpusStats::from_documents(&docs_r);
            let all: Vec<Option<Vec<String>>> = gl.iter().chain(&gr).cloned().collect();
            let ids = intern(&all);
            let mut df_l = vec![0usize; ids.len()];
            let mut df_r = vec![0usize; ids.len()];
            for (g, &id) in &ids {
                df_l[id as usize] = stats_l.df(g);
                df_r[id as usize] = stats_r.df(g);
            }
            let vectorize =
                |docs: &[Option<Vec<String>>], stats: &CorpusStats| -> Vec<Option<Sparse<u32>>> {
                    docs.iter()
                        .map(|d| {
                            d.as_ref().map(|grams| {
                                bag::term_weights(grams, |g| match scheme {
                                    Scheme::Tf => 1.0,
                                    Scheme::TfIdf => stats.idf(g),
                                })
                                .into_iter()
                                .map(|(g, w)| (ids[g.as_str()], w))
                                .collect()
                            })
                        })
                        .collect()
                };
            let (l, r) = (vectorize(&gl, &stats_l), vectorize(&gr, &stats_r));
            let sim = |a: &Sparse<u32>, b: &Sparse<u32>| {
                bag::sorted_similarity(measure, a, b, |&id| (df_l[id as usize], df_r[id as usize]))
            };
            pairwise(&l, &r, sim, symmetrize)
        }
        (Model::Graph { unit, n }, Measure::Graph(measure)) => {
            let graphs = |ps: &[EntityProfile]| -> Vec<Option<GramEdges>> {
                ps.iter()
                    .map(|p| {
                        scoped_values(p, &cfg.scope).map(|vs| {
                            ngram_graph::graph_from_values(vs.iter().map(String::as_str), unit, n)
                                .into_sorted_edges()
                        })
                    })
                    .collect()
            };
            let (gl, gr) = (graphs(left), graphs(right));
            let node_docs: Vec<Option<Vec<String>>> = gl
                .iter()
                .chain(&gr)
                .map(|g| {
                    g.as_ref().map(|es| {
                        es.iter()
                            .flat_map(|((a, b), _)| [a.clone(), b.clone()])
                            .collect()
                    })
                })
                .collect();
            let ids = intern(&node_docs);
            let encode = |gs: &[Option<GramEdges>]| -> Vec<Option<Sparse<u64>>> {
                gs.iter()
                    .map(|g| {
                        g.as_ref().map(|es| {
                            // ascending string pairs map to ascending packed ids
                            es.iter()
                                .map(|((a, b), w)| {
                                    (
                                        ((ids[a.as_str()] as u64) << 32) | ids[b.as_str()] as u64,
                                        *w,
                                    )
                                })
                                .collect()
                        })
                    })
                    .collect()
            };
            let (l, r) = (encode(&gl), encode(&gr));
            let sim = |a: &Sparse<u64>, b: &Sparse<u64>| {
                ngram_graph::sorted_graph_similarity(measure, a, b)
            };
            pairwise(&l, &r, sim, symmetrize)
        }
        (Model::PrecomputedVector, Measure::Vector(measure)) => {
            let (el, er) = opts
                .embeddings
                .ok_or_else(|| Error::Config("precomputed-vector model needs embeddings".into()))?;
            if el.dim() != er.dim() {
                return Err(Error::DimensionMismatch {
                    expected: el.dim(),
                    found: er.dim(),
                });
            }
            let l: Vec<Option<&[f64]>> = left.iter().map(|p| el.get(&p.id)).collect();
            let r: Vec<Option<&[f64]>> = right.iter().map(|p| er.get(&p.id)).collect();
            let sim = |a: &&[f64], b: &&[f64]| {
                vector_similarity(measure, a, b).expect("dimensions checked")
            };
            pairwise(&l, &r, sim, symmetrize)
        }
        _ => unreachable!("validated"),
    };

    let ids = |ps: &[EntityProfile]| ps.iter().map(|p| p.id.clone()).collect::<Vec<_>>();
    let mut graph = SimilarityGraph::new(ids(left), ids(right), edges)?;
    if graph.edge_count() > 0 {
        graph = graph.min_max_normalize()?;
    }
    Ok(BuiltGraph {
        graph,
        uncovered_left,
        uncovered_right,
    })
}

/// All-pairs similarity, sharded by left row. Rows are merged in index order
/// so the edge list is deterministic.
fn pairwise<T: Sync>(
    left: &[Option<T>],
    right: &[Option<T>],
    sim: impl Fn(&T, &T) -> f64 + Sync,
    symmetrize: bool,
) -> (Vec<Edge>, usize, usize) {
    let rows: Vec<Vec<Edge>> = left
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let Some(a) = a else { return Vec::new() };
            right
                .iter()
                .enumerate()
                .filter_map(|(j, b)| {
                    let b = b.as_ref()?;
                    let mut s = sim(a, b);
                    if symmetrize {
                        s = s.max(sim(b, a));
                    }
                    (s > 0.0 && s.is_finite()).then(|| Edge::new(i, j, s))
                })
                .collect()
        })
        .collect();
    let missing = |side: &[Option<T>]| side.iter().filter(|x| x.is_none()).count();
    (rows.concat(), missing(left), missing(right))
}
