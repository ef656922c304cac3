use std::io::Write;
use std::path::Path;

use super::files::{create, data_lines, write_err};
use crate::error::{Error, Result};
use crate::simgen::Embeddings;

/// `entity_id<TAB>v1 v2 ... vK`, one entity per line, K fixed by the first
/// line.
pub fn read_embeddings(path: &Path) -> Result<Embeddings> {
    let mut out: Option<Embeddings> = None;
    for (line, text) in data_lines(path)? {
        let Some((id, rest)) = text.split_once('\t') else {
            return Err(Error::parse(path, line, "expected `id<TAB>vector`"));
        };
        let v = rest
            .split_whitespace()
            .map(str::parse::<f64>)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::parse(path, line, e.to_string()))?;
        if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
            return Err(Error::parse(path, line, "empty or non-finite vector"));
        }
        let emb = out.get_or_insert_with(|| Embeddings::new(v.len()));
        match emb.insert(id.trim(), v) {
            Err(Error::DimensionMismatch { expected, found }) => {
                return Err(Error::parse(
                    path,
                    line,
                    format!("ragged vector: expected {expected} dimensions, found {found}"),
                ))
            }
            other => other?,
        }
    }
    Ok(out.unwrap_or_default())
}

pub fn write_embeddings(path: &Path, emb: &Embeddings) -> Result<()> {
    let mut rows: Vec<(&str, &[f64])> = emb.iter().collect();
    rows.sort_unstable_by(|a, b| a.0.cmp(b.0));
    let mut w = create(path)?;
    for (id, v) in rows {
        let dims: Vec<String> = v.iter().map(f64::to_string).collect();
        writeln!(w, "{id}\t{}", dims.join(" ")).map_err(write_err(path))?;
    }
    w.flush().map_err(write_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_vectors() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.txt");
        std::fs::write(&p, "a\t1 2 3 4\nb\t0 0 0 1\nc\t-1 0.5 2 3\n").unwrap();
        let e = read_embeddings(&p).unwrap();
        assert_eq!((e.len(), e.dim()), (3, 4));
        assert_eq!(e.get("c").unwrap()[1], 0.5);
    }

    #[test]
    fn wide_vector() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.txt");
        let dims: Vec<String> = (0..300).map(|i| (i as f64 / 300.0).to_string()).collect();
        std::fs::write(&p, format!("x\t{}\n", dims.join(" "))).unwrap();
        assert_eq!(read_embeddings(&p).unwrap().dim(), 300);
    }

    #[test]
    fn ragged_and_duplicate_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.txt");
        std::fs::write(&p, "a\t1 2\nb\t1 2 3\n").unwrap();
        assert!(matches!(
            read_embeddings(&p),
            Err(Error::Parse { line: 2, .. })
        ));
        std::fs::write(&p, "a\t1 2\na\t3 4\n").unwrap();
        assert!(matches!(read_embeddings(&p), Err(Error::DuplicateId(_))));
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.txt");
        let mut e = Embeddings::new(2);
        e.insert("a", vec![0.1, 1.0 / 3.0]).unwrap();
        e.insert("b", vec![-2.5, 0.0]).unwrap();
        write_embeddings(&p, &e).unwrap();
        assert_eq!(read_embeddings(&p).unwrap(), e);
    }
}
