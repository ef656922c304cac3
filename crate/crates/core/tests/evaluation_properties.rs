mod common;

use erbimatch::evaluation::{
    default_grid, friedman_statistic, mean_ranks, nemenyi_cd, threshold_sweep, GroundTruth,
    PrfScore, Report, ScoreMatrix, SweepRecord,
};
use erbimatch::matchers::{Algorithm, MatcherConfig};
use erbimatch::SimilarityGraph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_graph;

/// Random 1-1 ground truth over the graph's ids, covering about half of the
/// smaller side.
fn random_truth(g: &SimilarityGraph, seed: u64) -> GroundTruth {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lefts: Vec<usize> = (0..g.left_count()).collect();
    let mut rights: Vec<usize> = (0..g.right_count()).collect();
    lefts.shuffle(&mut rng);
    rights.shuffle(&mut rng);
    let n = lefts.len().min(rights.len()).div_ceil(2);
    GroundTruth::new(
        lefts[..n]
            .iter()
            .zip(&rights[..n])
            .map(|(&l, &r)| (g.left_ids()[l].clone(), g.right_ids()[r].clone())),
    )
    .unwrap()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..=6, 2usize..=15).prop_flat_map(|(k, n)| {
        prop::collection::vec(prop::collection::vec(0u8..=10, k), n).prop_map(|rows| {
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| x as f64 / 10.0).collect())
                .collect()
        })
    })
}

fn names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("alg{i}")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn f_measure_matches_recomputation(gt in 0usize..50, out in 0usize..50, tp_frac in 0.0f64..=1.0) {
        let tp = ((gt.min(out)) as f64 * tp_frac).floor() as usize;
        let s = PrfScore::from_counts(tp, out, gt);
        for v in [s.precision, s.recall, s.f_measure] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        let p = if out == 0 { 0.0 } else { tp as f64 / out as f64 };
        let r = if gt == 0 { 0.0 } else { tp as f64 / gt as f64 };
        let f = if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) };
        prop_assert!((s.precision - p).abs() < 1e-12);
        prop_assert!((s.recall - r).abs() < 1e-12);
        prop_assert!((s.f_measure - f).abs() < 1e-12);
    }

    #[test]
    fn sweep_selects_largest_best_threshold(seed in any::<u64>(), alg in 0usize..8) {
        let g = random_graph(seed, 10);
        let gt = random_truth(&g, seed);
        let alg = Algorithm::ALL[alg];
        let sweep = threshold_sweep(&g, alg, &MatcherConfig::default(), &gt, &default_grid()).unwrap();
        let best = sweep.optimal_score.f_measure;
        for (t, s) in sweep.grid.iter().zip(&sweep.scores) {
            prop_assert!(s.f_measure <= best);
            if *t > sweep.optimal_t {
                prop_assert!(s.f_measure < best, "t {} ties the optimum above {}", t, sweep.optimal_t);
            }
        }
        let at_opt = sweep.grid.iter().position(|&t| t == sweep.optimal_t).unwrap();
        prop_assert_eq!(&sweep.scores[at_opt], &sweep.optimal_score);
    }

    #[test]
    fn friedman_is_rank_based(rows in matrix(), scale in 0.1f64..10.0, shift in -5.0f64..5.0) {
        let k = rows[0].len();
        let s = ScoreMatrix::new(names(k), rows.clone()).unwrap();
        // a different strictly increasing map per row
        let transformed: Vec<Vec<f64>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .map(|&x| match i % 3 {
                        0 => scale * x + shift,
                        1 => x.powi(3),
                        _ => (x * 4.0).exp(),
                    })
                    .collect()
            })
            .collect();
        let t = ScoreMatrix::new(names(k), transformed).unwrap();
        prop_assert!((friedman_statistic(&s) - friedman_statistic(&t)).abs() < 1e-9);
        prop_assert_eq!(mean_ranks(&s).unwrap(), mean_ranks(&t).unwrap());
    }

    #[test]
    fn mean_ranks_sum_to_constant(rows in matrix()) {
        let k = rows[0].len();
        let s = ScoreMatrix::new(names(k), rows).unwrap();
        let total: f64 = mean_ranks(&s).unwrap().iter().sum();
        prop_assert!((total - (k * (k + 1)) as f64 / 2.0).abs() < 1e-9);
    }
}

#[test]
fn critical_distance_monotonicity() {
    for alpha in [0.05, 0.01] {
        for k in 2..=20 {
            for n in 2..200 {
                let here = nemenyi_cd(k, n, alpha).unwrap();
                assert!(nemenyi_cd(k, n + 1, alpha).unwrap() < here, "k {k}, n {n}");
                if k < 20 {
                    assert!(nemenyi_cd(k + 1, n, alpha).unwrap() > here, "k {k}, n {n}");
                }
            }
        }
    }
}

#[test]
fn report_round_trips_through_json() {
    let g = random_graph(5, 8);
    let gt = random_truth(&g, 5);
    let mut report = Report::new(serde_json::json!({"seed": 5, "name": "round trip"}));
    for alg in [Algorithm::Umc, Algorithm::Bah] {
        report.deterministic.sweeps.push(SweepRecord {
            dataset: "synthetic".into(),
            similarity: "random".into(),
            sweep: threshold_sweep(&g, alg, &MatcherConfig::default(), &gt, &default_grid())
                .unwrap(),
        });
    }
    let text = report.to_json().unwrap();
    assert_eq!(Report::from_json(&text).unwrap(), report);
    assert_eq!(Report::from_json(&text).unwrap().to_json().unwrap(), text);
}
