use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scores::{evaluate, GroundTruth, PrfScore};
use crate::error::{check_threshold, Error, Result};
use crate::graph::SimilarityGraph;
use crate::matchers::{self, Algorithm, MatcherConfig};

/// 0.05, 0.10, ..., 1.00.
pub fn default_grid() -> Vec<f64> {
    (1..=20).map(|k| k as f64 / 20.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub algorithm: Algorithm,
    pub grid: Vec<f64>,
    pub scores: Vec<PrfScore>,
    pub optimal_t: f64,
    pub optimal_score: PrfScore,
}

impl SweepResult {
    /// Picks the largest threshold attaining the best F-measure.
    pub fn from_scores(
        algorithm: Algorithm,
        grid: Vec<f64>,
        scores: Vec<PrfScore>,
    ) -> Result<Self> {
        if grid.is_empty() || grid.len() != scores.len() {
            return Err(Error::InvalidArgument(
                "sweep needs one score per grid point".into(),
            ));
        }
        let best = scores
            .iter()
            .map(|s| s.f_measure)
            .fold(f64::NEG_INFINITY, f64::max);
        let (t, s) = grid
            .iter()
            .zip(&scores)
            .filter(|(_, s)| s.f_measure == best)
            .max_by(|a, b| a.0.total_cmp(b.0))
            .expect("non-empty grid");
        Ok(SweepResult {
            algorithm,
            optimal_t: *t,
            optimal_score: *s,
            grid,
            scores,
        })
    }
}

/// Runs the matcher at every grid point. Grid points are independent and
/// evaluated in parallel.
pub fn threshold_sweep(
    g: &SimilarityGraph,
    algorithm: Algorithm,
    cfg: &MatcherConfig,
    gt: &GroundTruth,
    grid: &[f64],
) -> Result<SweepResult> {
    for &t in grid {
        check_threshold(t)?;
    }
    let scores = grid
        .par_iter()
        .map(|&t| matchers::run(algorithm, g, t, cfg).map(|m| evaluate(&m, gt, g)))
        .collect::<Result<Vec<_>>>()?;
    SweepResult::from_scores(algorithm, grid.to_vec(), scores)
}

/// Wall-clock statistics in seconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingStats {
    pub mean: f64,
    pub stddev: f64,
    pub runs: Vec<f64>,
}

impl TimingStats {
    pub fn from_runs(runs: Vec<f64>) -> Self {
        let n = runs.len() as f64;
        let mean = runs.iter().sum::<f64>() / n;
        let var = runs.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / n;
        TimingStats {
            mean,
            stddev: var.sqrt(),
            runs,
        }
    }
}

/// Times `repetitions` matcher runs after one untimed warm-up. Only the
/// matcher call is inside the timed interval.
pub fn benchmark(
    g: &SimilarityGraph,
    algorithm: Algorithm,
    cfg: &MatcherConfig,
    t: f64,
    repetitions: usize,
) -> Result<TimingStats> {
    if repetitions == 0 {
        return Err(Error::InvalidArgument(
            "at least one repetition required".into(),
        ));
    }
    matchers::run(algorithm, g, t, cfg)?;
    let mut runs = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let start = Instant::now();
        let m = matchers::run(algorithm, g, t, cfg)?;
        runs.push(start.elapsed().as_secs_f64());
        drop(std::hint::black_box(m));
    }
    Ok(TimingStats::from_runs(runs))
}
