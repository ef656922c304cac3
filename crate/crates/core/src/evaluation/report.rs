//! JSON and CSV reports. The `deterministic` section depends only on the
//! run configuration; wall times live in a separate `timings` section.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::stats::{friedman_test, mean_ranks, nemenyi_cd, FriedmanResult, ScoreMatrix};
use super::sweep::{SweepResult, TimingStats};
use crate::error::{Error, Result};
use crate::matchers::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::InvalidArgument(format!(
                "unknown report format `{s}`"
            ))),
        }
    }
}

/// One sweep over one similarity graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub dataset: String,
    pub similarity: String,
    pub sweep: SweepResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRecord {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub threshold: f64,
    pub stats: TimingStats,
}

/// Mean ranks and critical distance: enough to draw a critical-difference
/// diagram.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NemenyiDiagram {
    pub alpha: f64,
    pub inputs: usize,
    pub critical_distance: f64,
    pub mean_ranks: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatisticsSummary {
    pub friedman: Option<FriedmanResult>,
    pub nemenyi: NemenyiDiagram,
}

impl StatisticsSummary {
    /// Friedman is skipped for fewer than three algorithms.
    pub fn compute(s: &ScoreMatrix, alpha: f64) -> Result<Self> {
        let ranks = mean_ranks(s)?;
        let friedman = if s.k() >= 3 {
            Some(friedman_test(s, alpha)?)
        } else {
            None
        };
        Ok(StatisticsSummary {
            friedman,
            nemenyi: NemenyiDiagram {
                alpha,
                inputs: s.n(),
                critical_distance: nemenyi_cd(s.k(), s.n(), alpha)?,
                mean_ranks: s.algorithms().iter().cloned().zip(ranks).collect(),
            },
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DeterministicSection {
    /// Fully resolved run configuration.
    pub config: serde_json::Value,
    pub sweeps: Vec<SweepRecord>,
    pub statistics: Option<StatisticsSummary>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub deterministic: DeterministicSection,
    pub timings: Vec<TimingRecord>,
}

impl Report {
    pub fn new(config: serde_json::Value) -> Self {
        Report {
            deterministic: DeterministicSection {
                config,
                ..Default::default()
            },
            timings: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.deterministic.sweeps.is_empty()
            && self.deterministic.statistics.is_none()
            && self.timings.is_empty()
    }

    /// Canonical JSON: sorted keys, two-space indentation.
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self)?;
        Ok(serde_json::to_string_pretty(&value)? + "\n")
    }

    pub fn deterministic_json(&self) -> Result<String> {
        let value = serde_json::to_value(&self.deterministic)?;
        Ok(serde_json::to_string_pretty(&value)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// One row per (sweep, threshold).
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "dataset",
            "similarity",
            "algorithm",
            "threshold",
            "precision",
            "recall",
            "f_measure",
            "true_positives",
            "output_pairs",
            "gt_pairs",
            "optimal",
        ])?;
        for rec in &self.deterministic.sweeps {
            let sw = &rec.sweep;
            for (t, s) in sw.grid.iter().zip(&sw.scores) {
                w.write_record([
                    rec.dataset.clone(),
                    rec.similarity.clone(),
                    sw.algorithm.to_string(),
                    t.to_string(),
                    s.precision.to_string(),
                    s.recall.to_string(),
                    s.f_measure.to_string(),
                    s.true_positives.to_string(),
                    s.output_pairs.to_string(),
                    s.gt_pairs.to_string(),
                    (*t == sw.optimal_t).to_string(),
                ])?;
            }
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::io("csv buffer", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }
}

pub fn emit_report(report: &Report, format: ReportFormat, path: &Path) -> Result<()> {
    if report.is_empty() {
        return Err(Error::EmptyInput("report"));
    }
    let text = report.render(format)?;
    std::fs::write(path, text).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}
