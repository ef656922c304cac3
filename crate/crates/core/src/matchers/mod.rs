//! Bipartite graph matching algorithms for clean-clean entity resolution.
//!
//! Every matcher maps a similarity graph, a threshold `t` in `[0, 1]` and an
//! optional configuration to a [`Matching`] in which each pair is backed by an
//! edge of weight `>= t`. All matchers are deterministic; the swap search in
//! [`match_bah`] draws from a seeded generator local to the call.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{NodeRef, Side, SimilarityGraph};
use crate::matching::Matching;

mod bah;
mod bmc;
mod cnc;
mod exc;
mod krc;
mod rca;
mod rsr;
mod umc;

pub use bah::{match_bah, match_bah_traced};
pub use bmc::match_bmc;
pub use cnc::match_cnc;
pub use exc::match_exc;
pub use krc::match_krc;
pub use rca::{match_rca, rca_passes, RcaPasses};
pub use rsr::match_rsr;
pub use umc::match_umc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Cnc,
    Rsr,
    Rca,
    Bah,
    Bmc,
    Exc,
    Krc,
    Umc,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::Cnc,
        Algorithm::Rsr,
        Algorithm::Rca,
        Algorithm::Bah,
        Algorithm::Bmc,
        Algorithm::Exc,
        Algorithm::Krc,
        Algorithm::Umc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cnc => "cnc",
            Algorithm::Rsr => "rsr",
            Algorithm::Rca => "rca",
            Algorithm::Bah => "bah",
            Algorithm::Bmc => "bmc",
            Algorithm::Exc => "exc",
            Algorithm::Krc => "krc",
            Algorithm::Umc => "umc",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == lower)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm `{s}`")))
    }
}

/// Search budget for the swap-based assignment heuristic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BahConfig {
    pub max_moves: u64,
    #[serde(with = "duration_secs")]
    pub time_limit: Duration,
    pub rng_seed: u64,
}

impl Default for BahConfig {
    fn default() -> Self {
        BahConfig {
            max_moves: 10_000,
            time_limit: Duration::from_secs(120),
            rng_seed: 42,
        }
    }
}

impl BahConfig {
    pub fn validate(&self) -> Result<()> {
        if self.time_limit.is_zero() {
            return Err(Error::InvalidArgument(
                "BAH time limit must be positive".into(),
            ));
        }
        Ok(())
    }
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let secs = f64::deserialize(d)?;
        Duration::try_from_secs_f64(secs).map_err(serde::de::Error::custom)
    }
}

/// Partition whose nodes open the clusters in best-match clustering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BmcBasis {
    Left,
    Right,
    /// The smaller partition; left on a tie.
    #[default]
    Auto,
}

impl BmcBasis {
    pub fn resolve(self, g: &SimilarityGraph) -> Side {
        match self {
            BmcBasis::Left => Side::Left,
            BmcBasis::Right => Side::Right,
            BmcBasis::Auto if g.right_count() < g.left_count() => Side::Right,
            BmcBasis::Auto => Side::Left,
        }
    }
}

impl FromStr for BmcBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "v1" => Ok(BmcBasis::Left),
            "right" | "v2" => Ok(BmcBasis::Right),
            "auto" => Ok(BmcBasis::Auto),
            _ => Err(Error::InvalidArgument(format!("unknown BMC basis `{s}`"))),
        }
    }
}

/// Per-algorithm options; only BAH and BMC read anything from it.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct MatcherConfig {
    pub bah: BahConfig,
    pub bmc_basis: BmcBasis,
}

/// Runs `algorithm` on `g` at threshold `t`.
pub fn run(
    algorithm: Algorithm,
    g: &SimilarityGraph,
    t: f64,
    cfg: &MatcherConfig,
) -> Result<Matching> {
    match algorithm {
        Algorithm::Cnc => match_cnc(g, t),
        Algorithm::Rsr => match_rsr(g, t),
        Algorithm::Rca => match_rca(g, t),
        Algorithm::Bah => match_bah(g, t, &cfg.bah),
        Algorithm::Bmc => match_bmc(g, t, cfg.bmc_basis),
        Algorithm::Exc => match_exc(g, t),
        Algorithm::Krc => match_krc(g, t),
        Algorithm::Umc => match_umc(g, t),
    }
}

pub(crate) fn node_at(g: &SimilarityGraph, flat: usize) -> NodeRef {
    if flat < g.left_count() {
        NodeRef::left(flat)
    } else {
        NodeRef::right(flat - g.left_count())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::tests::example_graph;

    pub(crate) fn named_pairs(g: &SimilarityGraph, m: &Matching) -> Vec<(String, String)> {
        let mut v: Vec<_> = m
            .id_pairs(g)
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        v.sort();
        v
    }

    pub(crate) fn pairs(items: &[(&str, &str)]) -> Vec<(String, String)> {
        let mut v: Vec<_> = items
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn algorithm_names_parse_case_insensitively() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
            assert_eq!(a.name().to_uppercase().parse::<Algorithm>().unwrap(), a);
        }
        assert!("hungarian".parse::<Algorithm>().is_err());
    }

    #[test]
    fn all_matchers_reject_bad_threshold() {
        let g = example_graph();
        for a in Algorithm::ALL {
            assert!(run(a, &g, 1.5, &MatcherConfig::default()).is_err(), "{a}");
            assert!(run(a, &g, -0.01, &MatcherConfig::default()).is_err(), "{a}");
        }
    }

    #[test]
    fn auto_basis_picks_smaller_side() {
        let g = example_graph();
        assert_eq!(BmcBasis::Auto.resolve(&g), Side::Right);
        let square = SimilarityGraph::with_counts(2, 2, vec![]).unwrap();
        assert_eq!(BmcBasis::Auto.resolve(&square), Side::Left);
    }

    #[test]
    fn empty_graph_yields_empty_matching() {
        let g = SimilarityGraph::with_counts(3, 3, vec![]).unwrap();
        for a in Algorithm::ALL {
            assert!(
                run(a, &g, 0.5, &MatcherConfig::default())
                    .unwrap()
                    .is_empty(),
                "{a}"
            );
        }
    }
}
