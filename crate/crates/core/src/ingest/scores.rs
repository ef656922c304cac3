use std::path::Path;

use super::files::{create, open};
use crate::error::{Error, Result};
use crate::evaluation::ScoreMatrix;

/// CSV with a header `input,<alg1>,<alg2>,...` and one row per input. The
/// first column only labels rows.
pub fn read_score_matrix(path: &Path) -> Result<ScoreMatrix> {
    let mut rd = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(open(path)?);
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line() as usize);
        Error::parse(path, line, e.to_string())
    };
    let header = rd.headers().map_err(csv_err)?.clone();
    let algorithms: Vec<String> = header
        .iter()
        .skip(1)
        .map(|h| h.trim().to_string())
        .collect();
    if algorithms.is_empty() {
        return Err(Error::parse(path, 1, "header names no algorithms"));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let row = rec
            .iter()
            .skip(1)
            .map(|c| c.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::parse(path, line, e.to_string()))?;
        rows.push(row);
    }
    ScoreMatrix::new(algorithms, rows)
}

pub fn write_score_matrix(path: &Path, s: &ScoreMatrix) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(std::iter::once("input").chain(s.algorithms().iter().map(String::as_str)))?;
    for (i, row) in s.rows().iter().enumerate() {
        let mut rec = vec![i.to_string()];
        rec.extend(row.iter().map(f64::to_string));
        w.write_record(&rec)?;
    }
    w.flush()
        .map_err(|e| Error::io(format!("writing {}", path.display()), e))
}
