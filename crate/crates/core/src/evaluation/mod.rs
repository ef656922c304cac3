//! Effectiveness and efficiency evaluation: precision, recall and F-measure
//! against a ground truth, threshold sweeps, run-time benchmarks, and
//! Friedman/Nemenyi rank statistics.

mod report;
mod scores;
mod stats;
mod sweep;

pub use report::{
    emit_report, DeterministicSection, NemenyiDiagram, Report, ReportFormat, StatisticsSummary,
    SweepRecord, TimingRecord,
};
pub use scores::{evaluate, GroundTruth, PrfScore};
pub use stats::{
    friedman_statistic, friedman_test, mean_ranks, nemenyi_cd, rank_row, FriedmanResult,
    ScoreMatrix, MAX_ALGORITHMS,
};
pub use sweep::{benchmark, default_grid, threshold_sweep, SweepResult, TimingStats};
