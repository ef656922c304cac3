use std::io::Write;
use std::path::Path;

use super::files::{create, data_lines, write_err};
use crate::error::{Error, Result};
use crate::evaluation::GroundTruth;

/// `left_id<TAB>right_id` per line. A repeated id on either side breaks the
/// one-to-one contract and is reported with its line.
pub fn read_ground_truth(path: &Path) -> Result<GroundTruth> {
    let mut gt = GroundTruth::default();
    for (line, text) in data_lines(path)? {
        let mut fields = text.split('\t');
        let (Some(l), Some(r), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(path, line, "expected `left_id<TAB>right_id`"));
        };
        let (l, r) = (l.trim(), r.trim());
        if l.is_empty() || r.is_empty() {
            return Err(Error::parse(path, line, "empty id"));
        }
        gt.insert(l.to_string(), r.to_string())
            .map_err(|e| Error::parse(path, line, e.to_string()))?;
    }
    Ok(gt)
}

pub fn write_ground_truth(path: &Path, gt: &GroundTruth) -> Result<()> {
    let mut w = create(path)?;
    for (l, r) in gt.iter() {
        writeln!(w, "{l}\t{r}").map_err(write_err(path))?;
    }
    w.flush().map_err(write_err(path))
}
