//! Built-in end-to-end runs over the public benchmark datasets.
//!
//! A recipe reads `<data>/<dataset>/left.*`, `right.*` and `gt.tsv`, builds
//! the similarity graph over the full Cartesian product, and scores one
//! matcher at a fixed threshold.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::{default_grid, evaluate, threshold_sweep, PrfScore, SweepResult};
use crate::ingest::DatasetBundle;
use crate::matchers::{self, Algorithm, MatcherConfig};
use crate::simgen::{
    build_similarity_graph, BagMeasure, BuildOptions, Measure, Model, Scheme, Scope, SimFnConfig,
    Unit,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recipe {
    #[serde(rename = "table7-d2")]
    Table7D2,
    #[serde(rename = "table7-d4")]
    Table7D4,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecipeSpec {
    pub recipe: Recipe,
    pub dataset: String,
    pub similarity: SimFnConfig,
    pub algorithm: Algorithm,
    pub threshold: f64,
    pub expected_f1: f64,
    pub tolerance: f64,
}

impl Recipe {
    pub const ALL: [Recipe; 2] = [Recipe::Table7D2, Recipe::Table7D4];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::Table7D2 => "table7-d2",
            Recipe::Table7D4 => "table7-d4",
        }
    }

    pub fn spec(self) -> RecipeSpec {
        let (dataset, unit, n, threshold, expected_f1, tolerance) = match self {
            Recipe::Table7D2 => ("d2", Unit::Character, 2, 0.35, 0.95, 0.02),
            Recipe::Table7D4 => ("d4", Unit::Token, 1, 0.40, 0.99, 0.01),
        };
        RecipeSpec {
            recipe: self,
            dataset: dataset.to_string(),
            similarity: SimFnConfig {
                scope: Scope::SchemaAgnostic,
                model: Model::Bag {
                    unit,
                    n,
                    scheme: Scheme::TfIdf,
                },
                measure: Measure::Bag(BagMeasure::Cosine),
            },
            algorithm: Algorithm::Umc,
            threshold,
            expected_f1,
            tolerance,
        }
    }
}

impl std::fmt::Display for Recipe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Recipe::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let known: Vec<&str> = Recipe::ALL.iter().map(|r| r.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown recipe `{s}` (known: {})",
                    known.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecipeOutcome {
    pub spec: RecipeSpec,
    pub edge_count: usize,
    pub score: PrfScore,
    pub sweep: SweepResult,
    pub build_seconds: f64,
}

impl RecipeOutcome {
    pub fn within_tolerance(&self) -> bool {
        (self.score.f_measure - self.spec.expected_f1).abs() <= self.spec.tolerance
    }
}

const PROFILE_EXTENSIONS: [&str; 6] = ["csv", "csv.gz", "jsonl", "jsonl.gz", "tsv", "tsv.gz"];

fn find(dir: &Path, stem: &str, extensions: &[&str]) -> Result<PathBuf> {
    extensions
        .iter()
        .map(|ext| dir.join(format!("{stem}.{ext}")))
        .find(|p| p.is_file())
        .ok_or_else(|| {
            Error::io(
                format!(
                    "looking for {stem}.{{{}}} in {}",
                    extensions.join(","),
                    dir.display()
                ),
                std::io::Error::from(std::io::ErrorKind::NotFound),
            )
        })
}

/// Locates the three files of a dataset directory.
pub fn locate_dataset(data_dir: &Path, dataset: &str) -> Result<(PathBuf, PathBuf, PathBuf)> {
    let dir = data_dir.join(dataset);
    Ok((
        find(&dir, "left", &PROFILE_EXTENSIONS)?,
        find(&dir, "right", &PROFILE_EXTENSIONS)?,
        find(&dir, "gt", &["tsv", "tsv.gz"])?,
    ))
}

pub fn run_recipe(recipe: Recipe, data_dir: &Path) -> Result<RecipeOutcome> {
    let spec = recipe.spec();
    let (left, right, gt) = locate_dataset(data_dir, &spec.dataset)?;
    let bundle = DatasetBundle::load(&spec.dataset, &left, &right, &gt)?;
    let start = Instant::now();
    let graph = build_similarity_graph(
        &bundle.left,
        &bundle.right,
        &spec.similarity,
        &BuildOptions::default(),
    )?
    .graph;
    let build_seconds = start.elapsed().as_secs_f64();
    let cfg = MatcherConfig::default();
    let m = matchers::run(spec.algorithm, &graph, spec.threshold, &cfg)?;
    let score = evaluate(&m, &bundle.ground_truth, &graph);
    let sweep = threshold_sweep(
        &graph,
        spec.algorithm,
        &cfg,
        &bundle.ground_truth,
        &default_grid(),
    )?;
    Ok(RecipeOutcome {
        spec,
        edge_count: graph.edge_count(),
        score,
        sweep,
        build_seconds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for r in Recipe::ALL {
            assert_eq!(r.name().parse::<Recipe>().unwrap(), r);
        }
        assert!("table7-d9".parse::<Recipe>().is_err());
    }

    #[test]
    fn missing_data_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            run_recipe(Recipe::Table7D2, dir.path()),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn runs_on_a_small_fixture() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().join("d4");
        std::fs::create_dir(&d).unwrap();
        std::fs::write(
            d.join("left.csv"),
            "id,title,authors\nl1,graph matching for entity resolution,a smith\nl2,stable marriage approximations,b jones\nl3,row column scan heuristics,c wu\n",
        )
        .unwrap();
        std::fs::write(
            d.join("right.csv"),
            "id,title,authors\nr1,stable marriage approximation,b jones\nr2,entity resolution with graph matching,smith a\nr3,unrelated topic entirely,d lee\n",
        )
        .unwrap();
        std::fs::write(d.join("gt.tsv"), "l1\tr2\nl2\tr1\n").unwrap();
        let out = run_recipe(Recipe::Table7D4, dir.path()).unwrap();
        assert!(out.edge_count > 0);
        assert_eq!(out.score.gt_pairs, 2);
        assert_eq!(out.sweep.grid.len(), 20);
    }
}
