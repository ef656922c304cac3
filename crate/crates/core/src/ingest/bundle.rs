use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::profiles::{read_profiles, ProfileFormat};
use super::truth::read_ground_truth;
use crate::error::{Error, Result};
use crate::evaluation::GroundTruth;
use crate::profile::EntityProfile;

/// Attributes used for schema-based similarity on the ten benchmark
/// datasets.
pub fn default_attributes(dataset: &str) -> Option<&'static [&'static str]> {
    let attrs: &'static [&'static str] = match dataset.to_ascii_lowercase().as_str() {
        "d1" => &["name", "phone"],
        "d2" => &["name"],
        "d3" => &["title"],
        "d4" => &["title", "authors"],
        "d5" => &["modelno", "title"],
        "d6" => &["title", "authors"],
        "d7" => &["name", "title"],
        "d8" => &["title", "name"],
        "d9" => &["title", "abstract"],
        "d10" => &["title"],
        _ => return None,
    };
    Some(attrs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetBundle {
    pub name: String,
    pub left: Vec<EntityProfile>,
    pub right: Vec<EntityProfile>,
    pub ground_truth: GroundTruth,
    /// Attributes for schema-based runs.
    pub attributes: Vec<String>,
}

/// Size figures of a bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleStats {
    pub left_entities: usize,
    pub right_entities: usize,
    pub left_name_value_pairs: usize,
    pub right_name_value_pairs: usize,
    pub left_attributes: usize,
    pub right_attributes: usize,
    pub duplicates: usize,
    pub comparisons: u64,
}

fn format_of(path: &Path) -> Result<ProfileFormat> {
    ProfileFormat::from_path(path).ok_or_else(|| {
        Error::InvalidArgument(format!("cannot tell the format of {}", path.display()))
    })
}

impl DatasetBundle {
    /// Reads both collections and the ground truth, then validates ids.
    pub fn load(name: &str, left: &Path, right: &Path, ground_truth: &Path) -> Result<Self> {
        let bundle = DatasetBundle {
            name: name.to_string(),
            left: read_profiles(left, format_of(left)?)?,
            right: read_profiles(right, format_of(right)?)?,
            ground_truth: read_ground_truth(ground_truth)?,
            attributes: default_attributes(name)
                .map(|a| a.iter().map(|s| s.to_string()).collect())
                .unwrap_or_default(),
        };
        bundle.validate()?;
        Ok(bundle)
    }

    /// Every ground-truth id must name a profile on its side.
    pub fn validate(&self) -> Result<()> {
        let left: HashSet<&str> = self.left.iter().map(|p| p.id.as_str()).collect();
        let right: HashSet<&str> = self.right.iter().map(|p| p.id.as_str()).collect();
        for (l, r) in self.ground_truth.iter() {
            if !left.contains(l) {
                return Err(Error::UnknownId(l.to_string()));
            }
            if !right.contains(r) {
                return Err(Error::UnknownId(r.to_string()));
            }
        }
        Ok(())
    }

    pub fn stats(&self) -> BundleStats {
        let nvp = |ps: &[EntityProfile]| ps.iter().map(|p| p.all_values().count()).sum();
        let attrs = |ps: &[EntityProfile]| {
            ps.iter()
                .flat_map(|p| p.attributes.keys())
                .collect::<BTreeSet<_>>()
                .len()
        };
        BundleStats {
            left_entities: self.left.len(),
            right_entities: self.right.len(),
            left_name_value_pairs: nvp(&self.left),
            right_name_value_pairs: nvp(&self.right),
            left_attributes: attrs(&self.left),
            right_attributes: attrs(&self.right),
            duplicates: self.ground_truth.len(),
            comparisons: self.left.len() as u64 * self.right.len() as u64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_cover_ten_datasets() {
        for i in 1..=10 {
            assert!(default_attributes(&format!("D{i}")).is_some());
        }
        assert_eq!(default_attributes("d1").unwrap(), ["name", "phone"]);
        assert!(default_attributes("d11").is_none());
    }

    #[test]
    fn load_and_validate() {
        let dir = tempfile::tempdir().unwrap();
        let l = dir.path().join("left.csv");
        let r = dir.path().join("right.csv");
        let gt = dir.path().join("gt.tsv");
        std::fs::write(&l, "id,name\na1,x\na2,y\n").unwrap();
        std::fs::write(&r, "id,name\nb1,x\n").unwrap();
        std::fs::write(&gt, "a1\tb1\n").unwrap();
        let b = DatasetBundle::load("d2", &l, &r, &gt).unwrap();
        assert_eq!(b.attributes, ["name"]);
        let s = b.stats();
        assert_eq!(
            (
                s.left_entities,
                s.right_entities,
                s.duplicates,
                s.comparisons
            ),
            (2, 1, 1, 2)
        );
        std::fs::write(&gt, "a1\tb9\n").unwrap();
        assert!(matches!(
            DatasetBundle::load("d2", &l, &r, &gt),
            Err(Error::UnknownId(_))
        ));
    }
}
