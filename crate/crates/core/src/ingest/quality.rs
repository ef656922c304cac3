//! Flags used to discard uninformative similarity graphs before analysis.

use serde::{Deserialize, Serialize};

use crate::evaluation::{GroundTruth, SweepResult};
use crate::graph::{Side, SimilarityGraph};

/// Best F-measure below which a graph counts as noise.
pub const NOISE_F1: f64 = 0.25;
/// Maximum absolute score difference for two graphs to count as duplicates.
pub const DUPLICATE_TOLERANCE: f64 = 0.002;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphQualityFlags {
    pub all_matches_zero_weight: bool,
    pub noisy: bool,
    pub duplicate_of: Option<String>,
}

impl GraphQualityFlags {
    pub fn keep(&self) -> bool {
        !self.all_matches_zero_weight && !self.noisy && self.duplicate_of.is_none()
    }
}

/// What duplicate detection needs to know about an already accepted graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub id: String,
    pub dataset: String,
    pub edge_count: usize,
    pub sweeps: Vec<SweepResult>,
}

/// Same dataset and edge count, and at least two algorithms with the same
/// optimal threshold, F-measure within tolerance, and precision or recall
/// within tolerance.
pub fn is_duplicate(a: &GraphSummary, b: &GraphSummary) -> bool {
    if a.dataset != b.dataset || a.edge_count != b.edge_count {
        return false;
    }
    let close = |x: f64, y: f64| (x - y).abs() < DUPLICATE_TOLERANCE;
    let agreeing = a
        .sweeps
        .iter()
        .filter(|sa| {
            b.sweeps.iter().any(|sb| {
                let (pa, pb) = (&sa.optimal_score, &sb.optimal_score);
                sa.algorithm == sb.algorithm
                    && sa.optimal_t == sb.optimal_t
                    && close(pa.f_measure, pb.f_measure)
                    && (close(pa.precision, pb.precision) || close(pa.recall, pb.recall))
            })
        })
        .count();
    agreeing >= 2
}

pub fn quality_filter(
    g: &SimilarityGraph,
    gt: &GroundTruth,
    summary: &GraphSummary,
    accepted: &[GraphSummary],
) -> GraphQualityFlags {
    let all_matches_zero_weight = gt.iter().all(|(l, r)| {
        let weight = g
            .index_of(Side::Left, l)
            .zip(g.index_of(Side::Right, r))
            .and_then(|(li, ri)| g.weight(li, ri));
        weight.is_none_or(|w| w <= 0.0)
    });
    let best = summary
        .sweeps
        .iter()
        .map(|s| s.optimal_score.f_measure)
        .fold(0.0, f64::max);
    GraphQualityFlags {
        all_matches_zero_weight,
        noisy: best < NOISE_F1,
        duplicate_of: accepted
            .iter()
            .find(|other| is_duplicate(summary, other))
            .map(|other| other.id.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::PrfScore;
    use crate::graph::tests::example_graph;
    use crate::matchers::Algorithm;

    fn sweep(a: Algorithm, t: f64, p: f64, r: f64) -> SweepResult {
        let f = if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        };
        let s = PrfScore {
            precision: p,
            recall: r,
            f_measure: f,
            true_positives: 0,
            output_pairs: 0,
            gt_pairs: 0,
        };
        SweepResult {
            algorithm: a,
            grid: vec![t],
            scores: vec![s],
            optimal_t: t,
            optimal_score: s,
        }
    }

    fn summary(id: &str, edges: usize, sweeps: Vec<SweepResult>) -> GraphSummary {
        GraphSummary {
            id: id.into(),
            dataset: "d1".into(),
            edge_count: edges,
            sweeps,
        }
    }

    #[test]
    fn noisy_when_every_best_is_low() {
        let g = example_graph();
        let gt = GroundTruth::new([("A5", "B1")]).unwrap();
        let s = summary(
            "g",
            5,
            Algorithm::ALL
                .iter()
                .map(|&a| sweep(a, 0.5, 0.1, 0.1))
                .collect(),
        );
        let flags = quality_filter(&g, &gt, &s, &[]);
        assert!(flags.noisy);
        assert!(!flags.all_matches_zero_weight);
        assert!(!flags.keep());
    }

    #[test]
    fn zero_weight_matches() {
        let g = example_graph();
        let gt = GroundTruth::new([("A4", "B2"), ("A1", "B3")]).unwrap();
        let s = summary("g", 5, vec![sweep(Algorithm::Umc, 0.5, 0.9, 0.9)]);
        assert!(quality_filter(&g, &gt, &s, &[]).all_matches_zero_weight);
    }

    #[test]
    fn duplicates_need_two_agreeing_algorithms() {
        let a = summary(
            "a",
            10,
            vec![
                sweep(Algorithm::Umc, 0.4, 0.8, 0.6),
                sweep(Algorithm::Cnc, 0.5, 0.9, 0.3),
            ],
        );
        let b = summary(
            "b",
            10,
            vec![
                sweep(Algorithm::Umc, 0.4, 0.801, 0.6),
                sweep(Algorithm::Cnc, 0.5, 0.9, 0.3005),
            ],
        );
        assert!(is_duplicate(&a, &b));
        let one = summary(
            "c",
            10,
            vec![
                sweep(Algorithm::Umc, 0.4, 0.8, 0.6),
                sweep(Algorithm::Cnc, 0.55, 0.9, 0.3),
            ],
        );
        assert!(!is_duplicate(&a, &one));
        let other_size = summary("d", 11, b.sweeps.clone());
        assert!(!is_duplicate(&a, &other_size));
        let g = example_graph();
        let gt = GroundTruth::new([("A5", "B1")]).unwrap();
        assert_eq!(
            quality_filter(&g, &gt, &b, &[one, a])
                .duplicate_of
                .as_deref(),
            Some("a")
        );
    }
}
