//! Edge lists (`left<TAB>right<TAB>weight`) and matching files.
//!
//! Writers prefix the edges with `#@left` / `#@right` comment lines listing
//! every node in index order, so isolated nodes and index order survive a
//! round trip. Readers that ignore comments still see a plain edge list.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::files::{create, open, write_err};
use crate::error::{Error, Result};
use crate::graph::{Edge, Side, SimilarityGraph};
use crate::matchers::Algorithm;
use crate::matching::Matching;

#[derive(Default)]
struct IdTable {
    ids: Vec<String>,
    index: HashMap<String, usize>,
}

impl IdTable {
    fn intern(&mut self, id: &str) -> usize {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        self.ids.push(id.to_string());
        self.index.insert(id.to_string(), self.ids.len() - 1);
        self.ids.len() - 1
    }
}

pub fn read_edge_list(path: &Path) -> Result<SimilarityGraph> {
    let mut left = IdTable::default();
    let mut right = IdTable::default();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        let line = line.trim_end_matches('\r');
        if let Some(id) = line.strip_prefix("#@left\t") {
            left.intern(id);
            continue;
        }
        if let Some(id) = line.strip_prefix("#@right\t") {
            right.intern(id);
            continue;
        }
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [l, r, w] = fields[..] else {
            return Err(Error::parse(
                path,
                line_no,
                "expected `left<TAB>right<TAB>weight`",
            ));
        };
        let weight: f64 = w
            .trim()
            .parse()
            .map_err(|_| Error::parse(path, line_no, format!("bad weight `{w}`")))?;
        if !weight.is_finite() {
            return Err(Error::parse(path, line_no, "non-finite weight"));
        }
        let (li, ri) = (left.intern(l), right.intern(r));
        if !seen.insert((li, ri)) {
            return Err(Error::parse(
                path,
                line_no,
                format!("duplicate edge ({l}, {r})"),
            ));
        }
        edges.push(Edge::new(li, ri, weight));
    }
    SimilarityGraph::new(left.ids, right.ids, edges)
}

pub fn write_edge_list(path: &Path, g: &SimilarityGraph) -> Result<()> {
    let mut w = create(path)?;
    let err = write_err(path);
    writeln!(
        w,
        "# {} left nodes, {} right nodes, {} edges",
        g.left_count(),
        g.right_count(),
        g.edge_count()
    )
    .map_err(&err)?;
    for id in g.left_ids() {
        writeln!(w, "#@left\t{id}").map_err(&err)?;
    }
    for id in g.right_ids() {
        writeln!(w, "#@right\t{id}").map_err(&err)?;
    }
    for e in g.edges() {
        writeln!(
            w,
            "{}\t{}\t{}",
            g.left_ids()[e.left],
            g.right_ids()[e.right],
            e.weight
        )
        .map_err(&err)?;
    }
    w.flush().map_err(&err)
}

/// Provenance written as comment lines above the pairs of a matching file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchingHeader {
    pub algorithm: Algorithm,
    pub threshold: f64,
    pub config: serde_json::Value,
    pub wall_time_seconds: Option<f64>,
}

pub fn write_matching(
    path: &Path,
    g: &SimilarityGraph,
    m: &Matching,
    header: &MatchingHeader,
) -> Result<()> {
    let mut w = create(path)?;
    let err = write_err(path);
    writeln!(w, "# algorithm: {}", header.algorithm).map_err(&err)?;
    writeln!(w, "# threshold: {}", header.threshold).map_err(&err)?;
    writeln!(w, "# config: {}", serde_json::to_string(&header.config)?).map_err(&err)?;
    if let Some(t) = header.wall_time_seconds {
        writeln!(w, "# wall_time_seconds: {t}").map_err(&err)?;
    }
    for (l, r) in m.pairs() {
        let weight = g.weight(l, r).unwrap_or(0.0);
        writeln!(w, "{}\t{}\t{weight}", g.left_ids()[l], g.right_ids()[r]).map_err(&err)?;
    }
    w.flush().map_err(&err)
}

/// Reads pairs back against the graph's id tables; the weight column is
/// optional and ignored.
pub fn read_matching(path: &Path, g: &SimilarityGraph) -> Result<Matching> {
    let mut m = Matching::for_graph(g);
    for (line_no, line) in super::files::data_lines(path)? {
        let fields: Vec<&str> = line.split('\t').collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::parse(
                path,
                line_no,
                "expected `left<TAB>right[<TAB>weight]`",
            ));
        }
        let l = g
            .index_of(Side::Left, fields[0])
            .ok_or_else(|| Error::UnknownId(fields[0].to_string()))?;
        let r = g
            .index_of(Side::Right, fields[1])
            .ok_or_else(|| Error::UnknownId(fields[1].to_string()))?;
        if !m.try_insert(l, r) {
            return Err(Error::parse(path, line_no, "node matched twice"));
        }
    }
    Ok(m)
}
