use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::files::{create, open, write_err};
use crate::error::{Error, Result};
use crate::profile::EntityProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileFormat {
    Csv,
    Jsonl,
}

impl ProfileFormat {
    /// Guesses the format from the file name, ignoring a trailing `.gz`.
    pub fn from_path(path: &Path) -> Option<Self> {
        let name = path.file_name()?.to_str()?.to_ascii_lowercase();
        let name = name.strip_suffix(".gz").unwrap_or(&name);
        if name.ends_with(".csv") || name.ends_with(".tsv") {
            Some(ProfileFormat::Csv)
        } else if name.ends_with(".jsonl") || name.ends_with(".ndjson") {
            Some(ProfileFormat::Jsonl)
        } else {
            None
        }
    }
}

impl std::str::FromStr for ProfileFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ProfileFormat::Csv),
            "jsonl" => Ok(ProfileFormat::Jsonl),
            _ => Err(Error::InvalidArgument(format!(
                "unknown profile format `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CsvOptions {
    pub delimiter: u8,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions { delimiter: b',' }
    }
}

impl CsvOptions {
    /// Tab for `.tsv` files, comma otherwise.
    pub fn for_path(path: &Path) -> Self {
        let name = path.to_string_lossy().to_ascii_lowercase();
        let name = name.strip_suffix(".gz").unwrap_or(&name);
        CsvOptions {
            delimiter: if name.ends_with(".tsv") { b'\t' } else { b',' },
        }
    }
}

pub fn read_profiles(path: &Path, format: ProfileFormat) -> Result<Vec<EntityProfile>> {
    match format {
        ProfileFormat::Csv => read_csv_profiles(path, CsvOptions::for_path(path)),
        ProfileFormat::Jsonl => read_jsonl_profiles(path),
    }
}

fn check_unique(profiles: &[EntityProfile]) -> Result<()> {
    let mut seen = HashSet::new();
    for p in profiles {
        if !seen.insert(p.id.as_str()) {
            return Err(Error::DuplicateId(p.id.clone()));
        }
    }
    Ok(())
}

/// First column is the id, the header row names the attributes. Empty cells
/// are missing values.
pub fn read_csv_profiles(path: &Path, opts: CsvOptions) -> Result<Vec<EntityProfile>> {
    let mut rd = csv::ReaderBuilder::new()
        .delimiter(opts.delimiter)
        .has_headers(true)
        .from_reader(open(path)?);
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line() as usize);
        Error::parse(path, line, e.to_string())
    };
    let header = rd.headers().map_err(csv_err)?.clone();
    if header.is_empty() {
        return Err(Error::parse(path, 1, "missing header row"));
    }
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let id = rec.get(0).unwrap_or_default().trim();
        if id.is_empty() {
            return Err(Error::parse(path, line, "empty id"));
        }
        let mut p = EntityProfile::new(id);
        for (name, value) in header.iter().zip(rec.iter()).skip(1) {
            if !value.trim().is_empty() {
                p.push(name, value);
            }
        }
        out.push(p);
    }
    check_unique(&out)?;
    Ok(out)
}

/// One `{"id": ..., "attrs": {name: [values]}}` object per line.
pub fn read_jsonl_profiles(path: &Path) -> Result<Vec<EntityProfile>> {
    let mut out = Vec::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let mut p: EntityProfile =
            serde_json::from_str(&line).map_err(|e| Error::parse(path, i + 1, e.to_string()))?;
        if p.id.is_empty() {
            return Err(Error::parse(path, i + 1, "empty id"));
        }
        for values in p.attributes.values_mut() {
            values.retain(|v| !v.trim().is_empty());
        }
        p.attributes.retain(|_, v| !v.is_empty());
        out.push(p);
    }
    check_unique(&out)?;
    Ok(out)
}

pub fn write_profiles(
    path: &Path,
    format: ProfileFormat,
    profiles: &[EntityProfile],
) -> Result<()> {
    let mut w = create(path)?;
    match format {
        ProfileFormat::Jsonl => {
            for p in profiles {
                serde_json::to_writer(&mut w, p)?;
                w.write_all(b"\n").map_err(write_err(path))?;
            }
        }
        ProfileFormat::Csv => {
            let mut names: Vec<&str> = profiles
                .iter()
                .flat_map(|p| p.attributes.keys().map(String::as_str))
                .collect();
            names.sort_unstable();
            names.dedup();
            let mut cw = csv::Writer::from_writer(&mut w);
            cw.write_record(std::iter::once("id").chain(names.iter().copied()))?;
            for p in profiles {
                let mut row = vec![p.id.as_str()];
                for name in &names {
                    match p.values(name) {
                        [] => row.push(""),
                        [v] => row.push(v),
                        _ => {
                            return Err(Error::InvalidArgument(format!(
                                "profile `{}` has several `{name}` values; use JSONL",
                                p.id
                            )))
                        }
                    }
                }
                cw.write_record(&row)?;
            }
            cw.flush().map_err(write_err(path))?;
        }
    }
    w.flush().map_err(write_err(path))
}
